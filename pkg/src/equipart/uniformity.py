"""Pair-density verdicts and brute-force lemma verifiers.

A disjoint pair (A, B) is eps-uniform when every sub-pair (X, Y) with
|X| >= eps|A| and |Y| >= eps|B| has |d(X,Y) - d(A,B)| <= eps. This is
the standard two-sided regularity definition, imported wholesale; the
toolkit does not restate or weaken it. Certifying uniformity in general
is intractable, so check_pair is tri-state: exhaustive verdicts below a
size budget, otherwise witness search whose passing answer (SampledPass)
is explicitly one-sided.

Minimum qualifying sub-pair sizes use the ceiling: |X| >= ceil(eps|A|).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .exact import as_fraction, frac_ceil
from .graph import Graph, GraphError, pair_density


class UniformityError(ValueError):
    pass


@dataclass(frozen=True)
class UniformityParams:
    epsilon: Fraction
    exact_budget: int = 16
    sample_count: int = 64
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "epsilon", as_fraction(self.epsilon))
        if not 0 < self.epsilon < 1:
            raise UniformityError(f"epsilon must be in (0,1), got {self.epsilon}")
        if self.sample_count < 1:
            raise UniformityError("sample_count must be >= 1")


@dataclass(frozen=True)
class Witness:
    x: tuple[int, ...]
    y: tuple[int, ...]
    deviation: Fraction


@dataclass(frozen=True)
class PairVerdict:
    kind: str  # exact_pass | exact_fail | sampled_pass | witness_found
    density: Fraction
    witness: Witness | None
    checked_pairs: int
    seed: int | None = None

    @property
    def is_bad(self) -> bool:
        return self.kind in ("exact_fail", "witness_found")

    @property
    def is_exact(self) -> bool:
        return self.kind in ("exact_pass", "exact_fail")

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "deviation": str(self.witness.deviation) if self.witness else None,
            "witness_sizes": [len(self.witness.x), len(self.witness.y)]
            if self.witness
            else None,
            "checked_pairs": self.checked_pairs,
            "seed": self.seed,
        }


def _validate_pair(g: Graph, a, b) -> tuple[tuple[int, ...], tuple[int, ...]]:
    sa, sb = frozenset(a), frozenset(b)
    if not sa or not sb:
        raise UniformityError("pair sides must be nonempty")
    if sa & sb:
        raise UniformityError(f"pair sides overlap on {sorted(sa & sb)}")
    for v in sa | sb:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range")
    return tuple(sorted(sa)), tuple(sorted(sb))


_TABLE_CAP = 22  # largest |A|+|B| the submask tables will allocate


def _pair_table(g: Graph, a: tuple[int, ...], b: tuple[int, ...]):
    """e(X, Y) for every submask pair of (A, B), as an int64 array.

    Row index is the X bitmask over positions of A, column the Y bitmask
    over positions of B. Also returns per-mask popcounts for both sides.
    """
    na, nb = len(a), len(b)
    if na + nb > _TABLE_CAP:
        raise UniformityError(
            f"exhaustive checking needs |A|+|B| <= {_TABLE_CAP}, got {na + nb}"
        )
    y_bits = (np.arange(1 << nb)[:, None] >> np.arange(nb)[None, :]) & 1
    table = np.zeros((1 << na, 1 << nb), dtype=np.int64)
    x_masks = np.arange(1 << na)
    for i, u in enumerate(a):
        row = np.array([(g.neighbors_mask(u) >> v) & 1 for v in b], dtype=np.int64)
        cnt = y_bits @ row
        table[(x_masks >> i) & 1 == 1] += cnt[None, :]
    sx = ((x_masks[:, None] >> np.arange(na)[None, :]) & 1).sum(axis=1)
    sy = y_bits.sum(axis=1)
    return table, sx.astype(np.int64), sy.astype(np.int64)


def _exact_scan(g, a, b, epsilon: Fraction):
    """Exhaustive verdict; returns (passed, witness, qualifying_count)."""
    na, nb = len(a), len(b)
    e0 = sum(1 for u in a for v in b if g.has_edge(u, v))
    sab = na * nb
    ka = max(1, frac_ceil(epsilon * na))
    kb = max(1, frac_ceil(epsilon * nb))
    p, q = epsilon.numerator, epsilon.denominator
    table, sx, sy = _pair_table(g, a, b)
    ok_x = sx >= ka
    ok_y = sy >= kb
    checked = int(ok_x.sum()) * int(ok_y.sum())
    exs = table[ok_x][:, ok_y]
    sxs = sx[ok_x]
    sys_ = sy[ok_y]
    if max(p, q) > 10**9:
        # arbitrary-precision path; int64 would overflow
        exs = exs.astype(object)
        sxs = sxs.astype(object)
        sys_ = sys_.astype(object)
    prod = np.outer(sxs, sys_)
    # |e/(sx*sy) - e0/sab| > p/q  <=>  q*|e*sab - e0*sx*sy| > p*sab*sx*sy
    lhs = q * np.abs(exs * sab - e0 * prod)
    rhs = p * sab * prod
    viol = lhs > rhs
    if not viol.any():
        return True, None, checked
    xm = np.arange(1 << na)[ok_x]
    ym = np.arange(1 << nb)[ok_y]
    vi, vj = np.nonzero(viol)
    best = None
    d0 = Fraction(e0, sab)
    for i, j in zip(vi.tolist(), vj.tolist()):
        e = int(exs[i, j])
        dev = abs(Fraction(e, int(sxs[i]) * int(sys_[j])) - d0)
        key = (dev, -xm[i], -ym[j])
        if best is None or key > best[0]:
            xs = tuple(a[t] for t in range(na) if xm[i] >> t & 1)
            ys = tuple(b[t] for t in range(nb) if ym[j] >> t & 1)
            best = (key, Witness(xs, ys, dev))
    return False, best[1], checked


def _heuristic_candidates(g, a, b, ka, kb):
    """Deterministic defect witnesses: degree outliers, then extreme
    vertices' neighborhoods."""
    deg_a = sorted(a, key=lambda u: (sum(1 for v in b if g.has_edge(u, v)), u))
    deg_b = sorted(b, key=lambda v: (sum(1 for u in a if g.has_edge(u, v)), v))
    half_a = max(ka, len(a) // 2)
    half_b = max(kb, len(b) // 2)
    xs = [
        tuple(deg_a[:ka]),
        tuple(deg_a[-ka:]),
        tuple(deg_a[:half_a]),
        tuple(deg_a[-half_a:]),
    ]
    ys = [
        tuple(deg_b[:kb]),
        tuple(deg_b[-kb:]),
        tuple(deg_b[:half_b]),
        tuple(deg_b[-half_b:]),
    ]
    for u in (deg_a[0], deg_a[-1]):
        nbr = tuple(v for v in b if g.has_edge(u, v))
        non = tuple(v for v in b if not g.has_edge(u, v))
        if len(nbr) >= kb:
            ys.append(nbr)
        if len(non) >= kb:
            ys.append(non)
    for v in (deg_b[0], deg_b[-1]):
        nbr = tuple(u for u in a if g.has_edge(u, v))
        non = tuple(u for u in a if not g.has_edge(u, v))
        if len(nbr) >= ka:
            xs.append(nbr)
        if len(non) >= ka:
            xs.append(non)
    return [(x, y) for x in xs for y in ys]


def check_pair(g: Graph, a, b, params: UniformityParams) -> PairVerdict:
    """Tri-state eps-uniformity verdict for a disjoint pair.

    Exhaustive below the exact budget; otherwise deterministic witness
    heuristics followed by seeded random sub-pairs. SampledPass only
    says no witness was found.
    """
    a, b = _validate_pair(g, a, b)
    eps = params.epsilon
    d0 = pair_density(g, a, b)
    if len(a) + len(b) <= params.exact_budget:
        passed, witness, checked = _exact_scan(g, a, b, eps)
        kind = "exact_pass" if passed else "exact_fail"
        return PairVerdict(kind, d0, witness, checked, params.seed)

    ka = max(1, frac_ceil(eps * len(a)))
    kb = max(1, frac_ceil(eps * len(b)))
    checked = 0

    def deviation(x, y) -> Fraction:
        e = sum(1 for u in x for v in y if g.has_edge(u, v))
        return abs(Fraction(e, len(x) * len(y)) - d0)

    for x, y in _heuristic_candidates(g, a, b, ka, kb):
        checked += 1
        dev = deviation(x, y)
        if dev > eps:
            return PairVerdict(
                "witness_found", d0, Witness(tuple(sorted(x)), tuple(sorted(y)), dev),
                checked, params.seed,
            )
    rng = random.Random(params.seed)
    for _ in range(params.sample_count):
        x = tuple(rng.sample(a, rng.randint(ka, len(a))))
        y = tuple(rng.sample(b, rng.randint(kb, len(b))))
        checked += 1
        dev = deviation(x, y)
        if dev > eps:
            return PairVerdict(
                "witness_found", d0, Witness(tuple(sorted(x)), tuple(sorted(y)), dev),
                checked, params.seed,
            )
    return PairVerdict("sampled_pass", d0, None, checked, params.seed)


@dataclass
class PartitionUniformityReport:
    epsilon: Fraction
    q: int
    verdicts: dict = field(default_factory=dict)  # (i, j) -> PairVerdict
    all_exact: bool = True

    @property
    def bad_pairs(self) -> list[tuple[int, int]]:
        return sorted(k for k, v in self.verdicts.items() if v.is_bad)

    @property
    def bad_pair_count(self) -> int:
        return len(self.bad_pairs)

    @property
    def passed(self) -> bool:
        return Fraction(self.bad_pair_count) <= self.epsilon * self.q**2

    def to_json(self) -> dict:
        return {
            "epsilon": str(self.epsilon),
            "q": self.q,
            "bad_pair_count": self.bad_pair_count,
            "bad_pairs": [list(p) for p in self.bad_pairs],
            "threshold": str(self.epsilon * self.q**2),
            "passed": self.passed,
            "all_exact": self.all_exact,
            "verdicts": {f"{i},{j}": v.to_json() for (i, j), v in self.verdicts.items()},
        }


def check_partition(g: Graph, partition, params: UniformityParams) -> PartitionUniformityReport:
    """Count non-uniform class pairs against eps * q^2.

    A single-class partition has zero pairs and passes vacuously.
    """
    partition.validate(require_cover=False)
    classes = partition.classes
    q = len(classes)
    report = PartitionUniformityReport(params.epsilon, q)
    for i, j in combinations(range(q), 2):
        verdict = check_pair(g, classes[i], classes[j], params)
        report.verdicts[(i, j)] = verdict
        if not verdict.is_exact:
            report.all_exact = False
    return report


def slice_bound(epsilon, alpha) -> Fraction:
    """Uniformity surviving restriction to alpha-fraction sub-pairs:
    max(eps / alpha, 2 eps)."""
    eps = as_fraction(epsilon)
    al = as_fraction(alpha)
    if not 0 < eps < al <= 1:
        raise UniformityError(
            f"need 0 < epsilon < alpha <= 1, got epsilon={eps}, alpha={al}"
        )
    return max(eps / al, 2 * eps)


@dataclass
class SliceAudit:
    epsilon: Fraction
    alpha: Fraction
    eps_prime: Fraction
    subpairs_checked: int
    violations: list
    passed: bool


def verify_slice_bound(g: Graph, a, b, epsilon, alpha) -> SliceAudit:
    """Exhaustively check every qualifying sub-pair at the sliced bound.

    For every (A', B') with |A'| >= alpha|A| and |B'| >= alpha|B|, runs
    the exact uniformity check at eps' = slice_bound(eps, alpha). Meant
    for pairs with at most ~20 total vertices.
    """
    a, b = _validate_pair(g, a, b)
    eps = as_fraction(epsilon)
    al = as_fraction(alpha)
    eps_p = slice_bound(eps, al)
    na, nb = len(a), len(b)
    table, sx, sy = _pair_table(g, a, b)
    pa = max(1, frac_ceil(al * na))
    pb = max(1, frac_ceil(al * nb))
    p, q = eps_p.numerator, eps_p.denominator
    if max(p, q) > 10**9:
        table = table.astype(object)
    x_masks = np.arange(1 << na)
    y_masks = np.arange(1 << nb)

    # Qualifying X lists per sub-side size: inner threshold depends on
    # |A'| only, so group the filtering by size.
    def sub_lists(masks, sizes, parent, kmin):
        inside = (masks & ~parent) == 0
        ok = inside & (sizes >= kmin)
        return masks[ok], sizes[ok]

    checked = 0
    violations = []
    a_subs = [(m, int(sz)) for m, sz in zip(x_masks.tolist(), sx.tolist()) if sz >= pa]
    b_subs = [(m, int(sz)) for m, sz in zip(y_masks.tolist(), sy.tolist()) if sz >= pb]
    for am, asz in a_subs:
        ka = max(1, frac_ceil(eps_p * asz))
        xs, xs_sz = sub_lists(x_masks, sx, am, ka)
        for bm, bsz in b_subs:
            kb = max(1, frac_ceil(eps_p * bsz))
            ys, ys_sz = sub_lists(y_masks, sy, bm, kb)
            e0 = int(table[am, bm])
            sab = asz * bsz
            sub = table[np.ix_(xs, ys)]
            prod = np.outer(xs_sz, ys_sz)
            bad = q * np.abs(sub * sab - e0 * prod) > p * sab * prod
            checked += 1
            if bad.any():
                vi, vj = np.nonzero(bad)
                xm, ym = int(xs[vi[0]]), int(ys[vj[0]])
                violations.append(
                    {
                        "a_prime": [a[t] for t in range(na) if am >> t & 1],
                        "b_prime": [b[t] for t in range(nb) if bm >> t & 1],
                        "x": [a[t] for t in range(na) if xm >> t & 1],
                        "y": [b[t] for t in range(nb) if ym >> t & 1],
                    }
                )
    return SliceAudit(eps, al, eps_p, checked, violations, not violations)


# -- lemma verifiers -------------------------------------------------------


@dataclass(frozen=True)
class RSetCount:
    count: int
    ceiling: Fraction
    precondition_holds: bool
    density: Fraction
    threshold: Fraction

    @property
    def within_ceiling(self) -> bool:
        return Fraction(self.count) <= self.ceiling


_BRUTE_CAP_A = 16
_BRUTE_CAP_R = 4


def _check_caps(a, r):
    if len(a) > _BRUTE_CAP_A or r > _BRUTE_CAP_R or r < 1:
        raise UniformityError(
            f"brute-force verifier capped at |A| <= {_BRUTE_CAP_A}, 1 <= r <= {_BRUTE_CAP_R}"
        )


def count_shrinking_rsets(g: Graph, a, b, y, r: int, epsilon) -> RSetCount:
    """r-sets R in A whose common neighborhood inside Y falls to at most
    (d - eps)^r |Y|.

    The ceiling is eps * r * |A|^r; the precondition
    (d - eps)^(r-1) |Y| > eps |B| is reported, not enforced.
    """
    a, b = _validate_pair(g, a, b)
    sy = frozenset(y)
    if not sy <= frozenset(b):
        raise UniformityError("Y must be a subset of B")
    eps = as_fraction(epsilon)
    _check_caps(a, r)
    d = pair_density(g, a, b)
    y_mask = 0
    for v in sy:
        y_mask |= 1 << v
    thr = (d - eps) ** r * len(sy)
    pre = (d - eps) ** (r - 1) * len(sy) > eps * len(b)
    count = 0
    for rset in combinations(a, r):
        inter = y_mask
        for u in rset:
            inter &= g.neighbors_mask(u)
        if Fraction(inter.bit_count()) <= thr:
            count += 1
    ceiling = eps * r * Fraction(len(a)) ** r
    return RSetCount(count, ceiling, pre, d, thr)


def count_low_common_rsets(g: Graph, a, b, epsilon, r: int) -> RSetCount:
    """r-sets R in A with common neighborhood in B of size at most eps|B|.

    Ceiling eps * r * |A|^r; precondition 0 < 2 eps^(1/r) < d <= 1,
    compared exactly as 2^r eps < d^r.
    """
    a, b = _validate_pair(g, a, b)
    eps = as_fraction(epsilon)
    _check_caps(a, r)
    d = pair_density(g, a, b)
    b_mask = 0
    for v in b:
        b_mask |= 1 << v
    thr = eps * len(b)
    pre = eps > 0 and 2**r * eps < d**r
    count = 0
    for rset in combinations(a, r):
        inter = b_mask
        for u in rset:
            inter &= g.neighbors_mask(u)
        if Fraction(inter.bit_count()) <= thr:
            count += 1
    ceiling = eps * r * Fraction(len(a)) ** r
    return RSetCount(count, ceiling, pre, d, thr)


def count_low_induced_witness_rsets(g: Graph, a, b, epsilon, r: int) -> RSetCount:
    """r-sets R in A where some split R = R0 + R1 pins down at most
    eps|B| vertices of B adjacent to all of R0 and none of R1.

    All 2^r splits are enumerated per r-set. Ceiling eps * 2^r * |A|^r;
    precondition 2 eps^(1/r) < d < 1 - 2 eps^(1/r), compared exactly.
    """
    a, b = _validate_pair(g, a, b)
    eps = as_fraction(epsilon)
    _check_caps(a, r)
    d = pair_density(g, a, b)
    full = (1 << g.n) - 1
    b_mask = 0
    for v in b:
        b_mask |= 1 << v
    thr = eps * len(b)
    pre = eps > 0 and 2**r * eps < d**r and 2**r * eps < (1 - d) ** r
    count = 0
    for rset in combinations(a, r):
        hit = False
        for split in range(1 << r):
            inter = b_mask
            for idx, u in enumerate(rset):
                if split >> idx & 1:
                    inter &= full ^ g.neighbors_mask(u)
                else:
                    inter &= g.neighbors_mask(u)
            if Fraction(inter.bit_count()) <= thr:
                hit = True
                break
        if hit:
            count += 1
    ceiling = eps * 2**r * Fraction(len(a)) ** r
    return RSetCount(count, ceiling, pre, d, thr)
