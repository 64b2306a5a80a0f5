"""Exact clique and induced-copy counting.

Counts are over vertex subsets: count_induced(G, H) is the number of
|H|-subsets S of V(G) with G[S] isomorphic to H, so count_induced with a
complete pattern equals count_cliques. The pruned kernels and the naive
subset scans below are independent code paths; the naive ones exist as
oracles and are only meant for small graphs.
"""

from __future__ import annotations

from itertools import combinations, permutations

from .graph import Graph, GraphError
from .patterns import PatternGraph, triangle_code


def count_cliques(g: Graph, r: int) -> int:
    """Number of r-subsets inducing complete graphs.

    count_cliques(G, 1) = n and count_cliques(G, 2) = m.
    """
    if not 1 <= r <= g.n:
        raise GraphError(f"clique order {r} out of range for n={g.n}")
    if r == 1:
        return g.n
    if r == 2:
        return g.m
    adj = tuple(g.neighbors_mask(v) for v in range(g.n))
    total = 0

    # Extend cliques by vertices above the current maximum, pruning with
    # the running common-neighborhood mask.
    def extend(cand: int, depth: int) -> None:
        nonlocal total
        if depth == r:
            total += cand.bit_count()
            return
        rest = cand
        while rest:
            low = rest & -rest
            rest ^= low
            v = low.bit_length() - 1
            nxt = cand & adj[v] & ~((1 << (v + 1)) - 1)
            if nxt or depth + 1 == r:
                extend(nxt, depth + 1)

    extend((1 << g.n) - 1, 1)
    return total


def count_induced(g: Graph, pattern: PatternGraph) -> int:
    """Number of r-subsets of G inducing a copy of the pattern."""
    r = pattern.r
    if r > g.n:
        return 0
    if pattern.is_complete():
        return count_cliques(g, r)
    if pattern.is_empty():
        from .graph import complement

        return count_cliques(complement(g), r)
    adj = tuple(g.neighbors_mask(v) for v in range(g.n))
    codes = pattern.codes
    target_m = pattern.m
    total = 0
    for subset in combinations(range(g.n), r):
        code = 0
        bit = 0
        edges = 0
        for i in range(r):
            row = adj[subset[i]]
            for j in range(i + 1, r):
                if row >> subset[j] & 1:
                    code |= 1 << bit
                    edges += 1
                bit += 1
        if edges == target_m and code in codes:
            total += 1
    return total


# -- naive oracles -------------------------------------------------------


def naive_count_cliques(g: Graph, r: int) -> int:
    """Reference implementation: scan every r-subset, check all pairs."""
    if not 1 <= r <= g.n:
        raise GraphError(f"clique order {r} out of range for n={g.n}")
    total = 0
    for subset in combinations(range(g.n), r):
        if all(g.has_edge(u, v) for u, v in combinations(subset, 2)):
            total += 1
    return total


def naive_count_induced(g: Graph, pattern: PatternGraph) -> int:
    """Reference implementation: per-subset isomorphism by permutation trial."""
    r = pattern.r
    if r > g.n:
        return 0
    pat_adj = tuple(pattern.graph.neighbors_mask(v) for v in range(r))
    total = 0
    for subset in combinations(range(g.n), r):
        sub_adj = [0] * r
        for i in range(r):
            for j in range(i + 1, r):
                if g.has_edge(subset[i], subset[j]):
                    sub_adj[i] |= 1 << j
                    sub_adj[j] |= 1 << i
        sub_adj_t = tuple(sub_adj)
        sub_code = triangle_code(sub_adj_t, tuple(range(r)))
        for perm in permutations(range(r)):
            if triangle_code(pat_adj, perm) == sub_code:
                total += 1
                break
    return total
