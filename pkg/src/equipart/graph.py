"""Immutable simple graphs with bitset adjacency.

Vertices are 0..n-1. Adjacency rows are stored as Python ints used as
bitsets, which makes neighborhood intersection and edge counting over
vertex subsets cheap (bitwise AND + popcount). Graphs are immutable
after construction and safe to share across threads.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable


class GraphError(ValueError):
    """Invalid graph construction or vertex-set argument."""


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits_of(mask: int) -> list[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


class Graph:
    """Simple undirected graph: no loops, symmetric adjacency, cached size."""

    __slots__ = ("n", "m", "_adj")

    def __init__(self, n: int, adj: tuple[int, ...], m: int):
        self.n = n
        self._adj = adj
        self.m = m

    # -- queries ---------------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def neighbors_mask(self, u: int) -> int:
        return self._adj[u]

    def neighbors(self, u: int) -> list[int]:
        return bits_of(self._adj[u])

    def degree(self, u: int) -> int:
        return self._adj[u].bit_count()

    def degree_into(self, u: int, mask: int) -> int:
        return (self._adj[u] & mask).bit_count()

    def common_neighbors_mask(self, vertices: Iterable[int]) -> int:
        """Bulk neighborhood intersection over a set of vertices.

        The intersection over the empty set is all of [n].
        """
        m = (1 << self.n) - 1
        for v in vertices:
            m &= self._adj[v]
        return m

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            row = self._adj[u] >> (u + 1) << (u + 1)
            for v in bits_of(row):
                out.append((u, v))
        return out

    def edge_count_in_mask(self, mask: int) -> int:
        total = 0
        for v in bits_of(mask):
            total += (self._adj[v] & mask).bit_count()
        return total // 2

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self._adj == other._adj
        )

    def __hash__(self) -> int:
        return hash((self.n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def _check_vertex_set(g: Graph, vertices: Iterable[int], what: str) -> frozenset[int]:
    vs = frozenset(vertices)
    for v in vs:
        if not isinstance(v, int) or not 0 <= v < g.n:
            raise GraphError(f"{what} contains out-of-range vertex {v!r} (n={g.n})")
    return vs


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from an edge list.

    Duplicate and inverted-duplicate pairs are deduplicated. Self-loops
    and out-of-range endpoints are rejected.
    """
    if n < 0:
        raise GraphError(f"vertex count must be >= 0, got {n}")
    adj = [0] * n
    m = 0
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u},{v}) out of range for n={n}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        if not adj[u] >> v & 1:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            m += 1
    return Graph(n, tuple(adj), m)


def complement(g: Graph) -> Graph:
    """Complement graph: adjacency negated off the diagonal."""
    full = (1 << g.n) - 1
    adj = tuple((full ^ g._adj[u]) & ~(1 << u) for u in range(g.n))
    return Graph(g.n, adj, g.n * (g.n - 1) // 2 - g.m)


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph on the given vertices, relabeled 0..k-1.

    Returns the subgraph and the list mapping new labels to original ones.
    """
    vs = sorted(_check_vertex_set(g, vertices, "vertex set"))
    index = {v: i for i, v in enumerate(vs)}
    k = len(vs)
    adj = [0] * k
    m = 0
    for i, v in enumerate(vs):
        row = g._adj[v]
        for j in range(i + 1, k):
            if row >> vs[j] & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
                m += 1
    return Graph(k, tuple(adj), m), vs


def edge_count_within(g: Graph, vertices: Iterable[int]) -> int:
    """Number of edges with both endpoints in the set."""
    vs = _check_vertex_set(g, vertices, "vertex set")
    return g.edge_count_in_mask(mask_of(vs))


def edge_count_between(g: Graph, a: Iterable[int], b: Iterable[int]) -> int:
    """Number of edges with one endpoint in each set; sets must be disjoint."""
    sa = _check_vertex_set(g, a, "side A")
    sb = _check_vertex_set(g, b, "side B")
    if not sa or not sb:
        raise GraphError("both sides must be nonempty")
    if sa & sb:
        raise GraphError(f"sides overlap on {sorted(sa & sb)}")
    mb = mask_of(sb)
    return sum((g._adj[u] & mb).bit_count() for u in sa)


def pair_density(g: Graph, a: Iterable[int], b: Iterable[int]) -> Fraction:
    """Exact cross density: edges between the sides over |A|*|B|."""
    sa = frozenset(a)
    sb = frozenset(b)
    e = edge_count_between(g, sa, sb)
    return Fraction(e, len(sa) * len(sb))
