"""Theorem-constant schedules, evaluated exactly over Magnitudes.

The partitioning theorems come with recurrences for their constants
(cluster-count bounds L and K, clique-count coefficients xi and rho,
inner uniformity delta, grouping size b). The recurrences bottom out at
the order-2 base xi(eps, 2) = eps, L(eps, 2) = 1 and otherwise blow up
through the uniform-partition bound M, for which the standard tower of
2s of height ceil(eps^-5) is the default, floored at the requested
minimum cluster count l. A caller may plug in a different M table.

Indexing convention: formula bodies are instantiated at the target
order r while recursive references descend to r - 1, so at r = 3 the
inner uniformity constant is min(xi(eps^3, 2)/(r+1), eps^(5r)/16^r) =
min(eps^3/4, eps^15/4096).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .exact import as_fraction, frac_ceil
from .magnitude import Magnitude, mag_max, mag_min

THEOREMS = ("maint", "maint3", "maint2", "rams", "maintx", "ers2")


class ScheduleError(ValueError):
    pass


def _check_domain(epsilon: Fraction, r: int) -> None:
    if not 0 < epsilon < 1:
        raise ScheduleError(f"epsilon must be in (0,1), got {epsilon}")
    if r < 2:
        raise ScheduleError(f"r must be >= 2, got {r}")


def sul_bound(epsilon, l: int = 1, m_table=None) -> Magnitude:
    """Cluster-count bound for the uniform partition at the given epsilon.

    Default is a tower of 2s of height ceil(epsilon^-5), floored at l;
    m_table(epsilon, l) -> value substitutes a user-supplied bound.
    """
    if m_table is not None:
        return mag_max(Magnitude.coerce(m_table(epsilon, l)), Magnitude.coerce(l))
    eps = Magnitude.coerce(as_fraction(epsilon) if not isinstance(epsilon, Magnitude) else epsilon)
    height = (eps ** (-5)).ceil()
    return mag_max(Magnitude.tower(height), Magnitude.coerce(l))


_MAINT_CACHE: dict[tuple[Fraction, int], dict] = {}


def _maint(eps: Fraction, r: int, m_table=None) -> dict:
    _check_domain(eps, r)
    key = (eps, r)
    if m_table is None and key in _MAINT_CACHE:
        return _MAINT_CACHE[key]
    if r == 2:
        out = {
            "xi": Magnitude.exact(eps),
            "L": Magnitude.exact(1),
            "delta": None,
            "l": None,
            "M": None,
        }
    else:
        prev = _maint(eps**3, r - 1, m_table)
        l = mag_max(
            Magnitude.exact(frac_ceil(Fraction(1) / eps**5)),
            Magnitude.exact(1) / (4 * Magnitude.exact(eps) * prev["L"]),
        )
        delta = mag_min(
            prev["xi"] / Fraction(r + 1),
            Magnitude.exact(eps ** (5 * r) / 16**r),
        )
        m = sul_bound(
            delta.as_fraction() if delta.is_rational else delta, l_as_int(l), m_table
        )
        big_l = Magnitude.exact(8) * m * prev["L"] / Magnitude.exact(eps)
        xi = delta**2 / (Magnitude.exact(2) * m) ** r
        out = {"xi": xi, "L": big_l, "delta": delta, "l": l, "M": m}
    if m_table is None:
        _MAINT_CACHE[key] = out
    return out


def l_as_int(l: Magnitude) -> int | Magnitude:
    """Collapse a rational cluster-count magnitude to an int floor."""
    if l.is_rational:
        return max(1, frac_ceil(l.as_fraction()))
    return l


def ramsey_two_color_bound(b: int) -> int:
    """Upper bound on the two-color Ramsey number for monochromatic
    b-cliques: C(2b-2, b-1)."""
    if b < 1:
        raise ScheduleError(f"b must be >= 1, got {b}")
    return comb(2 * b - 2, b - 1)


def _maintx(eps: Fraction, r: int, m_table=None) -> dict:
    _check_domain(eps, r)
    if r == 2:
        # The induced pipeline bottoms out in direct scooping; its base
        # constants mirror the clique schedule.
        return {
            "xi": Magnitude.exact(eps),
            "L": Magnitude.exact(1),
            "delta": None,
            "l": None,
            "M": None,
            "b": None,
            "gamma": None,
        }
    prev = _maint(eps**3, r - 1, m_table)
    b = frac_ceil(Fraction(1) / eps**3)
    rb = ramsey_two_color_bound(b)
    gamma = eps**2 / (4 * rb)
    n_eb = frac_ceil(Fraction(2 * rb) / eps**2) + 1
    delta = mag_min(
        Magnitude.exact(gamma * eps**2),
        prev["xi"] / Fraction(2**r + 1),
        Magnitude.exact(eps ** (3 * r) / 4**r),
    )
    m = sul_bound(delta.as_fraction() if delta.is_rational else delta, n_eb, m_table)
    big_l = Magnitude.exact(8) * m * prev["L"] / Magnitude.exact(eps)
    xi = delta**2 / (Magnitude.exact(2) * m) ** r
    return {
        "xi": xi,
        "L": big_l,
        "delta": delta,
        "l": Magnitude.exact(n_eb),
        "M": m,
        "b": Magnitude.exact(b),
        "gamma": Magnitude.exact(gamma),
    }


def schedule(theorem: str, epsilon, r: int, k: int | None = None,
             c=None, m_table=None) -> dict:
    """Evaluate the named theorem's constant recurrence.

    Returns a dict of named Magnitudes (xi, L, delta, l, and the
    theorem-specific rho, K, gamma, b, sigma, beta). Parameters outside
    a recurrence's domain are reported by name.
    """
    theorem = theorem.lower()
    eps = as_fraction(epsilon)
    if theorem == "maint":
        return dict(_maint(eps, r, m_table))
    if theorem in ("maint3", "maint2"):
        _check_domain(eps, r)
        kk = 2 if k is None else k
        if kk < 2:
            raise ScheduleError(f"k must be >= 2, got {kk}")
        base = _maint(eps**3, r, m_table)
        delta = mag_min(
            Magnitude.exact(eps**2) / (8 * base["L"]),
            Magnitude.exact(eps / 4),
        )
        l = mag_max(Magnitude.exact(kk), Magnitude.exact(Fraction(2) / eps))
        m = sul_bound(delta.as_fraction() if delta.is_rational else delta,
                      l_as_int(l), m_table)
        big_k = Magnitude.exact(8) * m * base["L"] / Magnitude.exact(eps)
        rho = base["xi"] / (Magnitude.exact(2) * m) ** r
        return {"delta": delta, "l": l, "K": big_k, "rho": rho,
                "xi": base["xi"], "L": base["L"], "M": m}
    if theorem == "rams":
        _check_domain(eps, r)
        kk = 2 if k is None else k
        if kk < 2:
            raise ScheduleError(f"k must be >= 2, got {kk}")
        base = _maint(eps**3, r, m_table)
        delta = mag_min(
            Magnitude.exact(eps**2) / (8 * base["L"]),
            Magnitude.exact(eps / 8),
        )
        rho = base["xi"]
        big_k = Magnitude.exact(Fraction(8 * kk)) * base["L"] / Magnitude.exact(eps)
        return {"delta": delta, "rho": rho, "K": big_k,
                "xi": base["xi"], "L": base["L"]}
    if theorem == "maintx":
        return _maintx(eps, r, m_table)
    if theorem == "ers2":
        if r < 3:
            raise ScheduleError(f"ers2 requires r >= 3, got {r}")
        if c is None:
            raise ScheduleError("ers2 requires the ambient density c")
        cc = as_fraction(c)
        if cc <= 0:
            raise ScheduleError(f"c must be positive, got {cc}")
        sigma = min(cc / 4, eps)
        base = _maint(sigma, r, m_table)
        if cc - 2 * sigma <= 0:
            raise ScheduleError("beta nonpositive: c <= 2*sigma")
        beta = Magnitude.exact(cc - 2 * sigma) / base["L"] ** 2
        return {"sigma": Magnitude.exact(sigma), "xi": base["xi"],
                "L": base["L"], "beta": beta}
    raise ScheduleError(f"unknown theorem {theorem!r} (choose from {THEOREMS})")


@dataclass
class FeasibilityReport:
    theorem: str
    epsilon: Fraction
    r: int
    n: int
    feasible: bool
    threshold_ok: bool
    s_ok: bool
    details: dict

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "epsilon": str(self.epsilon),
            "r": self.r,
            "n": self.n,
            "feasible": self.feasible,
            "threshold_ok": self.threshold_ok,
            "s_ok": self.s_ok,
            "details": self.details,
        }


def feasibility_report(theorem: str, epsilon, r: int, n: int,
                       k: int | None = None, c=None, m_table=None) -> FeasibilityReport:
    """Whether the theorem's thresholds are non-vacuous at order n.

    Checks xi * n^r >= 1 (at least one clique count can clear the
    threshold) and that the class-size formula stays >= 1. Pipelines use
    this to explain Incomplete outcomes at desk scale.
    """
    eps = as_fraction(epsilon)
    if n <= 0:
        return FeasibilityReport(theorem, eps, r, n, False, False, False,
                                 {"reason": "empty graph"})
    sched = schedule(theorem, eps, r, k=k, c=c, m_table=m_table)
    coeff = sched.get("rho") or sched["xi"]
    threshold = coeff * Magnitude.exact(Fraction(n) ** r)
    threshold_ok = not threshold < Magnitude.exact(1)

    # Class-size formula s = eps*n / (4 * l * L(eps^3, r-1)); at r = 2 the
    # pipeline scoops directly with s = floor(eps*n/4).
    if r == 2:
        s_est = Magnitude.exact(eps * n / 4)
    else:
        inner_l = sched.get("l") or Magnitude.exact(k or 2)
        inner_big_l = _maint(eps**3, r - 1, m_table)["L"]
        s_est = (
            Magnitude.exact(eps * n)
            / (Magnitude.exact(4) * inner_l * inner_big_l)
        )
    s_ok = not s_est < Magnitude.exact(1)
    details = {
        "threshold_coefficient": coeff.to_json(),
        "threshold_times_n_r": threshold.to_json(),
        "s_estimate": s_est.to_json(),
    }
    return FeasibilityReport(theorem, eps, r, n, threshold_ok and s_ok,
                             threshold_ok, s_ok, details)
