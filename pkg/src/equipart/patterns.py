"""Small pattern graphs with order-invariant canonical keys.

Canonical form is the minimum upper-triangle bit code over all vertex
permutations (exhaustive; patterns are capped at 10 vertices). Codes of
all relabelings double as a membership set for induced-copy tests.
"""

from __future__ import annotations

from itertools import combinations, permutations

from .graph import Graph, GraphError, build_graph

MAX_PATTERN_ORDER = 10


def triangle_code(adj: tuple[int, ...], order: tuple[int, ...]) -> int:
    """Upper-triangle bit code of the adjacency under the given vertex order."""
    code = 0
    bit = 0
    r = len(order)
    for i in range(r):
        row = adj[order[i]]
        for j in range(i + 1, r):
            if row >> order[j] & 1:
                code |= 1 << bit
            bit += 1
    return code


class PatternGraph:
    """Pattern for induced-subgraph counting, 2 <= order <= 10."""

    __slots__ = ("r", "graph", "canonical", "_codes")

    def __init__(self, graph: Graph):
        if not 1 <= graph.n <= MAX_PATTERN_ORDER:
            raise GraphError(
                f"pattern order must be in [1, {MAX_PATTERN_ORDER}], got {graph.n}"
            )
        self.r = graph.n
        self.graph = graph
        adj = tuple(graph.neighbors_mask(v) for v in range(graph.n))
        self.canonical = min(
            triangle_code(adj, p) for p in permutations(range(graph.n))
        )
        self._codes: frozenset[int] | None = None

    @property
    def codes(self) -> frozenset[int]:
        """Bit codes of every relabeling; lazy, cached."""
        if self._codes is None:
            adj = tuple(self.graph.neighbors_mask(v) for v in range(self.r))
            self._codes = frozenset(
                triangle_code(adj, p) for p in permutations(range(self.r))
            )
        return self._codes

    @property
    def m(self) -> int:
        return self.graph.m

    def is_complete(self) -> bool:
        return self.m == self.r * (self.r - 1) // 2

    def is_empty(self) -> bool:
        return self.m == 0

    def complement(self) -> "PatternGraph":
        from .graph import complement as graph_complement

        return PatternGraph(graph_complement(self.graph))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PatternGraph)
            and self.r == other.r
            and self.canonical == other.canonical
        )

    def __hash__(self) -> int:
        return hash((self.r, self.canonical))

    def __repr__(self) -> str:
        return f"PatternGraph(r={self.r}, m={self.m}, canonical={self.canonical})"


def pattern_from_edges(r: int, edges) -> PatternGraph:
    return PatternGraph(build_graph(r, edges))


def complete_pattern(r: int) -> PatternGraph:
    return pattern_from_edges(r, combinations(range(r), 2))


def empty_pattern(r: int) -> PatternGraph:
    return pattern_from_edges(r, [])


def path_pattern(r: int) -> PatternGraph:
    return pattern_from_edges(r, [(i, i + 1) for i in range(r - 1)])


def cycle_pattern(r: int) -> PatternGraph:
    if r < 3:
        raise GraphError("cycle needs at least 3 vertices")
    return pattern_from_edges(r, [(i, (i + 1) % r) for i in range(r)])


_NAMED = {"K": complete_pattern, "E": empty_pattern, "P": path_pattern, "C": cycle_pattern}


def named_pattern(name: str) -> PatternGraph:
    """Parse names like K3, P4, C5, E2 (complete, path, cycle, empty)."""
    name = name.strip()
    if len(name) >= 2 and name[0].upper() in _NAMED and name[1:].isdigit():
        return _NAMED[name[0].upper()](int(name[1:]))
    raise GraphError(f"unknown pattern name {name!r} (expected K/P/C/E + order)")
