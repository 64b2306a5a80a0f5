"""Deterministic graph generators and a small non-isomorphic-graph atlas.

Every generator is a pure function of its spec plus seed; identical
inputs give identical graphs. TuranGraph(n, parts=r-1) is K_r-free by
construction; BlowUp replaces each base vertex by an independent set.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, permutations

import numpy as np

from .graph import Graph, GraphError, build_graph

KINDS = (
    "gnp",
    "gnm",
    "complete_multipartite",
    "planted_blocks",
    "turan",
    "blowup",
    "from_file",
)


@dataclass
class GeneratorSpec:
    kind: str
    params: dict = field(default_factory=dict)
    seed: int = 0

    def to_json(self) -> dict:
        params = {
            k: (v if not isinstance(v, Graph) else {"n": v.n, "edges": v.edges()})
            for k, v in self.params.items()
        }
        return {"kind": self.kind, "params": params, "seed": self.seed}


def gnp(n: int, p: float, seed: int = 0) -> Graph:
    if n < 0 or not 0.0 <= p <= 1.0:
        raise GraphError(f"invalid gnp parameters n={n}, p={p}")
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return build_graph(n, edges)


def gnm(n: int, m: int, seed: int = 0) -> Graph:
    total = n * (n - 1) // 2
    if not 0 <= m <= total:
        raise GraphError(f"invalid gnm parameters n={n}, m={m}")
    rng = random.Random(seed)
    pairs = list(combinations(range(n), 2))
    return build_graph(n, rng.sample(pairs, m))


def complete_multipartite(sizes: list[int]) -> Graph:
    if any(s <= 0 for s in sizes) or not sizes:
        raise GraphError(f"part sizes must be positive, got {sizes}")
    bounds = []
    start = 0
    for s in sizes:
        bounds.append((start, start + s))
        start += s
    edges = []
    for (a0, a1), (b0, b1) in combinations(bounds, 2):
        edges.extend((u, v) for u in range(a0, a1) for v in range(b0, b1))
    return build_graph(start, edges)


def turan(n: int, parts: int) -> Graph:
    """Turan graph T(n, parts): complete multipartite with near-equal parts."""
    if parts < 1 or n < parts:
        raise GraphError(f"invalid turan parameters n={n}, parts={parts}")
    base, extra = divmod(n, parts)
    return complete_multipartite([base + 1] * extra + [base] * (parts - extra))


def planted_blocks(sizes: list[int], density: list[list[float]], seed: int = 0) -> Graph:
    """Stochastic block graph with per-block-pair edge probabilities."""
    k = len(sizes)
    if len(density) != k or any(len(row) != k for row in density):
        raise GraphError("density must be a k x k matrix matching the part sizes")
    rng = random.Random(seed)
    labels = []
    for b, s in enumerate(sizes):
        labels.extend([b] * s)
    n = len(labels)
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < density[labels[u]][labels[v]]:
                edges.append((u, v))
    return build_graph(n, edges)


def blowup(base: Graph, factor: int) -> Graph:
    """Each base vertex becomes an independent factor-set; edges follow the base."""
    if factor < 1:
        raise GraphError(f"blowup factor must be >= 1, got {factor}")
    edges = []
    for u, v in base.edges():
        for i in range(factor):
            for j in range(factor):
                edges.append((u * factor + i, v * factor + j))
    return build_graph(base.n * factor, edges)


def cycle_graph(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return build_graph(n, combinations(range(n), 2))


def empty_graph(n: int) -> Graph:
    return build_graph(n, [])


def shuffled(g: Graph, seed: int) -> Graph:
    """Relabel vertices by a seeded permutation (isomorphic copy)."""
    rng = random.Random(seed)
    perm = list(range(g.n))
    rng.shuffle(perm)
    return build_graph(g.n, [(perm[u], perm[v]) for u, v in g.edges()])


def generate(spec: GeneratorSpec) -> Graph:
    """Build the graph described by a GeneratorSpec."""
    kind = spec.kind.lower().replace("-", "_")
    p = spec.params
    if kind == "gnp":
        return gnp(p["n"], p["p"], spec.seed)
    if kind == "gnm":
        return gnm(p["n"], p["m"], spec.seed)
    if kind == "complete_multipartite":
        return complete_multipartite(list(p["sizes"]))
    if kind == "planted_blocks":
        return planted_blocks(list(p["sizes"]), p["density"], spec.seed)
    if kind == "turan":
        return turan(p["n"], p["parts"])
    if kind == "blowup":
        base = p["base"]
        if not isinstance(base, Graph):
            base = build_graph(base["n"], [tuple(e) for e in base["edges"]])
        return blowup(base, p["factor"])
    if kind == "from_file":
        from .graph_io import load_edge_list

        return load_edge_list(p["path"])[0]
    raise GraphError(f"unknown generator kind {spec.kind!r} (known: {KINDS})")


# -- atlas of non-isomorphic graphs ---------------------------------------

_ATLAS_CACHE: dict[int, list[Graph]] = {}


def _canonical_codes_batch(n: int) -> np.ndarray:
    perms = np.array(list(permutations(range(n))), dtype=np.int64)
    return perms


def _canonical_code_np(matrix: np.ndarray, perms: np.ndarray, iu, weights) -> int:
    permuted = matrix[perms[:, :, None], perms[:, None, :]]
    bits = permuted[:, iu[0], iu[1]].astype(np.int64)
    return int((bits * weights).sum(axis=1).min())


def all_nonisomorphic_graphs(n: int) -> list[Graph]:
    """All graphs on n vertices up to isomorphism (n <= 7), by extension.

    Counts are 1, 2, 4, 11, 34, 156, 1044 for n = 1..7.
    """
    if n < 1 or n > 7:
        raise GraphError("atlas supports 1 <= n <= 7")
    if n in _ATLAS_CACHE:
        return _ATLAS_CACHE[n]
    if n == 1:
        result = [build_graph(1, [])]
        _ATLAS_CACHE[1] = result
        return result
    parents = all_nonisomorphic_graphs(n - 1)
    perms = _canonical_codes_batch(n)
    iu = np.triu_indices(n, 1)
    weights = 1 << np.arange(len(iu[0]), dtype=np.int64)
    seen: dict[int, Graph] = {}
    for parent in parents:
        base = np.zeros((n, n), dtype=np.int8)
        for u, v in parent.edges():
            base[u, v] = base[v, u] = 1
        for mask in range(1 << (n - 1)):
            matrix = base.copy()
            for v in range(n - 1):
                if mask >> v & 1:
                    matrix[v, n - 1] = matrix[n - 1, v] = 1
            code = _canonical_code_np(matrix, perms, iu, weights)
            if code not in seen:
                edges = [
                    (u, v)
                    for u in range(n)
                    for v in range(u + 1, n)
                    if matrix[u, v]
                ]
                seen[code] = build_graph(n, edges)
    result = list(seen.values())
    _ATLAS_CACHE[n] = result
    return result
