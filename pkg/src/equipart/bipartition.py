"""Judicious bipartitions, the balanced edge-spread functional, and
balanced-cut search.

phi(G, k) = min over k-subsets U of e(U)/k + e(V - U)/(n - k) - m/n.
Negative values witness uneven edge distribution; the functional obeys
phi(G, floor(n/2)) <= (k/(n-k)) * phi(G, k) for 1 <= k <= floor(n/2),
which phi_inequality_check verifies exhaustively.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations
from math import comb

from .exact import as_fraction
from .graph import Graph, edge_count_between, edge_count_within, mask_of
from .pipelines import PipelineParams, PipelineResult, sparse_uniform_partition


class BipartitionError(ValueError):
    pass


# -- judicious bipartition ---------------------------------------------------


@dataclass
class JudiciousResult:
    v1: frozenset[int]
    v2: frozenset[int]
    density_v1: Fraction  # e(V1) / |V1|^2
    density_v2: Fraction  # e(V2) / |V2|^2
    ambient: Fraction  # c = m / n^2
    sigma: Fraction
    beta: Fraction  # empirical (c - 2 sigma) / q^2
    epsilon: Fraction
    status: str
    reasons: list[str]
    inner: PipelineResult

    @property
    def v1_sparse(self) -> bool:
        return self.density_v1 < self.epsilon

    @property
    def v2_improved(self) -> bool:
        return self.density_v2 < self.ambient

    @property
    def v2_below_c_minus_beta(self) -> bool:
        return self.density_v2 < self.ambient - self.beta

    def to_json(self) -> dict:
        return {
            "v1": sorted(self.v1),
            "v2": sorted(self.v2),
            "density_v1": str(self.density_v1),
            "density_v2": str(self.density_v2),
            "ambient": str(self.ambient),
            "sigma": str(self.sigma),
            "beta": str(self.beta),
            "epsilon": str(self.epsilon),
            "v1_sparse": self.v1_sparse,
            "v2_improved": self.v2_improved,
            "status": self.status,
            "reasons": self.reasons,
        }


def judicious_bipartition(g: Graph, r: int, epsilon,
                          params: PipelineParams | None = None) -> JudiciousResult:
    """Split V into a sparse class and a rest of below-ambient density.

    Runs the sparse uniform pipeline at sigma = min(c/4, eps), picks the
    class with maximum boundary to the other non-exceptional vertices
    (exact comparison, ties to the lowest class index), and returns that
    class as V1 with everything else as V2. Incomplete inner pipelines
    propagate.
    """
    eps = as_fraction(epsilon)
    n = g.n
    if n < 2:
        raise BipartitionError("graph needs at least 2 vertices")
    if g.m == 0:
        raise BipartitionError("ambient density c = m/n^2 is zero")
    c = Fraction(g.m, n * n)
    sigma = min(c / 4, eps)
    params = params or PipelineParams(epsilon=eps, r=r)
    inner_params = replace(params, delta=min(params.delta, sigma))
    inner = sparse_uniform_partition(g, r, sigma, k_min=2, params=inner_params)
    reasons = list(inner.reasons)
    status = inner.status
    if not inner.partition.q:
        raise BipartitionError("inner pipeline produced no classes: " + "; ".join(reasons))
    classes = inner.partition.classes
    prime = set()
    for cls in classes:
        prime |= cls
    best = None
    for idx, cls in enumerate(classes):
        rest = prime - cls
        boundary = edge_count_between(g, cls, rest) if rest else 0
        if best is None or boundary > best[0]:
            best = (boundary, idx)
    v1 = classes[best[1]]
    v2 = frozenset(range(n)) - v1
    d1 = Fraction(edge_count_within(g, v1), len(v1) ** 2)
    d2 = Fraction(edge_count_within(g, v2), len(v2) ** 2) if v2 else Fraction(0)
    beta = (c - 2 * sigma) / inner.partition.q**2
    return JudiciousResult(v1, v2, d1, d2, c, sigma, beta, eps, status, reasons, inner)


# -- the balanced edge-spread functional --------------------------------------


@dataclass
class PhiResult:
    value: Fraction
    subset: frozenset[int]
    exact: bool
    k: int

    def to_json(self) -> dict:
        return {
            "value": str(self.value),
            "subset": sorted(self.subset),
            "exact": self.exact,
            "k": self.k,
        }


def _phi_objective_tables(g: Graph):
    degrees = [g.degree(v) for v in range(g.n)]
    masks = [g.neighbors_mask(v) for v in range(g.n)]
    return degrees, masks


def _phi_from_objective(obj: int, n: int, k: int, m: int) -> Fraction:
    # Internal objective O(U) = n*e(U) - k*sum(deg(u) for u in U); then
    # phi = (n*O + m*k^2) / (k*(n-k)*n).
    return Fraction(n * obj + m * k * k, k * (n - k) * n)


def phi(g: Graph, k: int, exact_cap: int = 10**7, seed: int = 0,
        restarts: int = 16) -> PhiResult:
    """Minimum of e(U)/k + e(V-U)/(n-k) - m/n over k-subsets U.

    Exact (first minimizer in lexicographic order) while C(n,k) fits the
    budget; beyond that a seeded swap local search returns an upper
    bound explicitly labeled non-exact.
    """
    n = g.n
    if not 1 <= k <= n - 1:
        raise BipartitionError(f"k must be in [1, n-1], got {k}")
    degrees, masks = _phi_objective_tables(g)

    def objective(subset) -> int:
        mask = mask_of(subset)
        e_u = sum((masks[v] & mask).bit_count() for v in subset) // 2
        return n * e_u - k * sum(degrees[v] for v in subset)

    if comb(n, k) <= exact_cap:
        best, best_obj = None, None
        for subset in combinations(range(n), k):
            obj = objective(subset)
            if best_obj is None or obj < best_obj:
                best, best_obj = subset, obj
        return PhiResult(_phi_from_objective(best_obj, n, k, g.m), frozenset(best), True, k)

    rng = random.Random(seed)
    best, best_obj = None, None
    for _ in range(restarts):
        current = set(rng.sample(range(n), k))
        cur_obj = objective(current)
        improved = True
        while improved:
            improved = False
            move = None
            for u in sorted(current):
                for v in range(n):
                    if v in current:
                        continue
                    cand = (current - {u}) | {v}
                    obj = objective(cand)
                    if move is None or obj < move[0]:
                        move = (obj, u, v)
            if move and move[0] < cur_obj:
                cur_obj, u, v = move
                current = (current - {u}) | {v}
                improved = True
        if best_obj is None or cur_obj < best_obj:
            best, best_obj = frozenset(current), cur_obj
    return PhiResult(_phi_from_objective(best_obj, n, k, g.m), best, False, k)


@dataclass
class PhiInequalityReport:
    values: dict  # k -> Fraction
    half_value: Fraction
    violations: list[int]

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "values": {str(k): str(v) for k, v in self.values.items()},
            "half_value": str(self.half_value),
            "violations": self.violations,
            "passed": self.passed,
        }


def phi_inequality_check(g: Graph, exact_cap: int = 10**7) -> PhiInequalityReport:
    """Verify phi(G, floor(n/2)) <= (k/(n-k)) * phi(G, k) for every k."""
    n = g.n
    if n < 2:
        raise BipartitionError("need n >= 2")
    half = n // 2
    values = {}
    for k in range(1, half + 1):
        values[k] = phi(g, k, exact_cap=exact_cap).value
    half_value = values[half]
    violations = [
        k for k in range(1, half + 1)
        if half_value > Fraction(k, n - k) * values[k]
    ]
    return PhiInequalityReport(values, half_value, violations)


# -- balanced cut search -------------------------------------------------------


@dataclass
class CutResult:
    v1: frozenset[int]
    v2: frozenset[int]
    cut: int
    ratio: Fraction  # cut / m, 0 on empty graphs
    starts: int
    seeded_from_judicious: bool

    def to_json(self) -> dict:
        return {
            "v1": sorted(self.v1),
            "v2": sorted(self.v2),
            "cut": self.cut,
            "ratio": str(self.ratio),
            "starts": self.starts,
            "seeded_from_judicious": self.seeded_from_judicious,
        }


def _cut_size(g: Graph, side_mask: int) -> int:
    other = ((1 << g.n) - 1) ^ side_mask
    total = 0
    m = side_mask
    while m:
        low = m & -m
        m ^= low
        v = low.bit_length() - 1
        total += (g.neighbors_mask(v) & other).bit_count()
    return total


def _hillclimb(g: Graph, side: set[int]) -> tuple[set[int], int]:
    """Best-improvement swap local search at fixed side sizes."""
    other = set(range(g.n)) - side
    cut = _cut_size(g, mask_of(side))
    while True:
        side_mask = mask_of(side)
        other_mask = mask_of(other)
        best = None
        for u in side:
            du_in = (g.neighbors_mask(u) & side_mask).bit_count()
            du_out = (g.neighbors_mask(u) & other_mask).bit_count()
            for v in other:
                dv_in = (g.neighbors_mask(v) & side_mask).bit_count()
                dv_out = (g.neighbors_mask(v) & other_mask).bit_count()
                gain = (du_in - du_out) + (dv_out - dv_in) + 2 * (1 if g.has_edge(u, v) else 0)
                if gain > 0 and (best is None or gain > best[0]):
                    best = (gain, u, v)
        if best is None:
            return side, cut
        _, u, v = best
        side.remove(u)
        side.add(v)
        other.remove(v)
        other.add(u)
        cut += best[0]


def _balance_to(g: Graph, seed_set: set[int], target: int) -> set[int]:
    side = set(seed_set)
    while len(side) > target:
        # Drop the vertex whose removal loses the least cut.
        best = min(
            sorted(side),
            key=lambda v: (g.neighbors_mask(v) & ~mask_of(side)).bit_count(),
        )
        side.remove(best)
    while len(side) < target:
        outside = sorted(set(range(g.n)) - side)
        side_mask = mask_of(side)
        best = max(
            outside,
            key=lambda v: (g.neighbors_mask(v) & ~side_mask).bit_count()
            - (g.neighbors_mask(v) & side_mask).bit_count(),
        )
        side.add(best)
    return side


def balanced_cut_search(g: Graph, params: PipelineParams | None = None,
                        restarts: int = 16) -> CutResult:
    """Seeded local search for a large balanced cut, |V1| = floor(n/2).

    Starts from the judicious bipartition (balanced greedily) when that
    pipeline completes, plus an index split and seeded random splits,
    each polished by best-improvement swaps. The quality guarantee is
    observed, not certified.
    """
    n = g.n
    if n < 2:
        raise BipartitionError("need n >= 2")
    params = params or PipelineParams()
    target = n // 2
    starts: list[set[int]] = []
    seeded = False
    try:
        jres = judicious_bipartition(g, params.r, params.epsilon, params)
        if jres.status == "complete":
            starts.append(_balance_to(g, set(jres.v1), target))
            seeded = True
    except (BipartitionError, ValueError):
        pass
    starts.append(set(range(target)))
    rng = random.Random(params.seed)
    for _ in range(restarts):
        starts.append(set(rng.sample(range(n), target)))
    best_side, best_cut = None, -1
    for start in starts:
        side, cut = _hillclimb(g, set(start))
        if cut > best_cut:
            best_side, best_cut = side, cut
    v1 = frozenset(best_side)
    v2 = frozenset(range(n)) - v1
    ratio = Fraction(best_cut, g.m) if g.m else Fraction(0)
    return CutResult(v1, v2, best_cut, ratio, len(starts), seeded)


def exhaustive_balanced_cut(g: Graph) -> tuple[frozenset[int], int]:
    """Oracle: the true maximum balanced cut by full enumeration.

    Fixes vertex 0 on one side; meant for n around 20 or below.
    """
    n = g.n
    if n < 2:
        raise BipartitionError("need n >= 2")
    target = n // 2
    best, best_cut = None, -1
    rest = list(range(1, n))
    for tail in combinations(rest, target - 1):
        side = (0,) + tail
        cut = _cut_size(g, mask_of(side))
        if cut > best_cut:
            best, best_cut = side, cut
    # The complement side may also have size floor(n/2) when n is odd.
    if n % 2 == 1:
        for tail in combinations(rest, target):
            cut = _cut_size(g, mask_of(tail))
            if cut > best_cut:
                best, best_cut = tail, cut
    return frozenset(best), best_cut
