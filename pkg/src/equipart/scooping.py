"""Scooping: iterated extraction of minimum-edge subsets of fixed size.

On a graph with e(G) <= eps^3 * C(n,2) and 0 < s <= eps*n, repeatedly
removing an s-subset with (close to) minimum internal edge count until
at most ceil(eps*n) vertices remain yields classes with
e(Vi) < eps * C(s,2) and a small leftover. The deterministic
ConditionalExpectation strategy peels maximum-degree vertices, which
keeps each extracted subset at or below the averaging bound
e(pool) * C(s,2) / C(|pool|,2), so the guarantee survives
derandomization. Dense mode runs the same machinery on the complement.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from .exact import as_fraction, frac_ceil
from .graph import Graph, GraphError, complement, edge_count_within, mask_of
from .partition import Certificate, Partition, certify

STRATEGIES = ("exact", "conditional", "sampled")
EXACT_SUBSET_CAP = 10**7


class ScoopError(ValueError):
    pass


def average_bound(g: Graph, pool, s: int) -> Fraction:
    """e(pool) * C(s,2) / C(|pool|,2), the first-moment bound."""
    pool = sorted(set(pool))
    p = len(pool)
    if p < 2 or s < 2:
        return Fraction(0)
    return Fraction(edge_count_within(g, pool) * comb(s, 2), comb(p, 2))


def _peel_conditional(g: Graph, pool: list[int], s: int) -> frozenset[int]:
    """Remove a max-degree-into-pool vertex (ties: lowest index) until s remain."""
    alive = set(pool)
    deg = {v: g.degree_into(v, mask_of(alive)) for v in alive}
    heap = [(-d, v) for v, d in deg.items()]
    heapq.heapify(heap)
    while len(alive) > s:
        while True:
            nd, v = heapq.heappop(heap)
            if v in alive and -nd == deg[v]:
                break
        alive.remove(v)
        if deg[v]:
            for u in g.neighbors(v):
                if u in alive:
                    deg[u] -= 1
                    heapq.heappush(heap, (-deg[u], u))
    return frozenset(alive)


def min_edge_subset(
    g: Graph,
    pool,
    s: int,
    strategy: str = "conditional",
    seed: int = 0,
    sample_count: int = 64,
) -> frozenset[int]:
    """An s-subset of the pool with small internal edge count.

    exact: true minimizer (first in lexicographic order), refused when
    C(|pool|, s) exceeds 10^7. conditional: deterministic max-degree
    peeling; never exceeds the averaging bound. sampled: best of
    sample_count seeded draws.
    """
    pool = sorted(set(pool))
    if s > len(pool):
        raise ScoopError(f"s={s} exceeds pool size {len(pool)}")
    if s < 0:
        raise ScoopError("s must be nonnegative")
    if strategy not in STRATEGIES:
        raise ScoopError(f"unknown strategy {strategy!r} (choose from {STRATEGIES})")
    if strategy == "exact":
        if comb(len(pool), s) > EXACT_SUBSET_CAP:
            raise ScoopError(
                f"exact search over C({len(pool)},{s}) subsets exceeds {EXACT_SUBSET_CAP}"
            )
        best, best_e = None, None
        for subset in combinations(pool, s):
            e = g.edge_count_in_mask(mask_of(subset))
            if best_e is None or e < best_e:
                best, best_e = subset, e
                if e == 0:
                    break
        return frozenset(best)
    if strategy == "conditional":
        return _peel_conditional(g, pool, s)
    rng = random.Random(seed)
    best, best_e = None, None
    for _ in range(sample_count):
        subset = rng.sample(pool, s)
        e = g.edge_count_in_mask(mask_of(subset))
        if best_e is None or e < best_e:
            best, best_e = subset, e
    return frozenset(best)


@dataclass
class ScoopResult:
    partition: Partition  # covers the target set only
    certificate: Certificate
    mode: str
    strategy: str
    s: int
    epsilon: Fraction
    precondition_held: bool  # e(target) <= eps^3 * C(|target|, 2) in the work graph
    target_edges: int
    seed: int

    @property
    def complete(self) -> bool:
        return self.certificate.complete


def scoop(
    g: Graph,
    target,
    s: int,
    epsilon,
    mode: str = "sparse",
    strategy: str = "conditional",
    seed: int = 0,
    sample_count: int = 64,
) -> ScoopResult:
    """Partition the target set into s-classes of low (or high) density.

    Classes are extracted iteratively by min_edge_subset over the
    shrinking pool; extraction stops as soon as the remainder is at most
    ceil(eps * |target|), which is what protects the averaging chain
    behind the e(Vi) < eps * C(s,2) guarantee. Dense mode scoops the
    complement and certifies classes as dense in the original graph.
    """
    target = sorted(set(target))
    t = len(target)
    if not target:
        raise ScoopError("target set is empty")
    for v in target:
        if not 0 <= v < g.n:
            raise GraphError(f"target vertex {v} out of range")
    eps = as_fraction(epsilon)
    if not 0 < eps < 1:
        raise ScoopError(f"epsilon must be in (0,1), got {eps}")
    if s < 1:
        raise ScoopError("class size s must be >= 1")
    if Fraction(s) > eps * t:
        raise ScoopError(f"s={s} violates s <= eps*|target| = {eps * t}")
    if mode not in ("sparse", "dense"):
        raise ScoopError(f"unknown scoop mode {mode!r}")

    work = g if mode == "sparse" else complement(g)
    e_target = edge_count_within(work, target)
    precondition = Fraction(e_target) <= eps**3 * comb(t, 2)

    leftover_cap = frac_ceil(eps * t)
    pool = list(target)
    classes: list[frozenset[int]] = []
    while len(pool) - s >= 0 and len(pool) > leftover_cap:
        chosen = min_edge_subset(
            work, pool, s, strategy, seed=seed + len(classes), sample_count=sample_count
        )
        classes.append(chosen)
        pool = [v for v in pool if v not in chosen]
    partition = Partition(g.n, tuple(classes), frozenset(pool))
    cert = certify(g, partition, eps, mode=mode)
    return ScoopResult(
        partition, cert, mode, strategy, s, eps, precondition, e_target, seed
    )
