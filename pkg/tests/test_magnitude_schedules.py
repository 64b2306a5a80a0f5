import random
from fractions import Fraction

import pytest

from equipart import (
    Magnitude,
    MagnitudeError,
    ScheduleError,
    feasibility_report,
    mag_max,
    mag_min,
    ramsey_two_color_bound,
    schedule,
    sul_bound,
)


def test_exact_rational_roundtrip():
    m = Magnitude.exact(Fraction(3, 7))
    assert m.as_fraction() == Fraction(3, 7)
    assert m.to_json() == {"kind": "rational", "num": 3, "den": 7}


def test_positive_domain():
    with pytest.raises(MagnitudeError):
        Magnitude.exact(0)
    with pytest.raises(MagnitudeError):
        Magnitude.exact(Fraction(-1, 2))


def test_small_towers_evaluate_exactly():
    assert Magnitude.tower(3).as_fraction() == 16
    assert Magnitude.tower(4).as_fraction() == 65536
    assert Magnitude.tower(5).as_fraction() == Fraction(2) ** 65536


def test_symbolic_tower_dominates_rationals():
    t = Magnitude.tower(6)
    assert t.kind == "tower"
    assert t > Magnitude.exact(10**1000)
    assert t.reciprocal() < Magnitude.exact(Fraction(1, 10**1000))


def test_comparisons_transitive_and_consistent():
    rng = random.Random(1)
    values = [
        Magnitude.exact(Fraction(rng.randint(1, 50), rng.randint(1, 50)))
        for _ in range(6)
    ]
    values += [Magnitude.tower(6), Magnitude.tower(9), Magnitude.tower(9).reciprocal()]
    for a in values:
        for b in values:
            for c in values:
                if not a < b and not b < c:
                    assert not a < c
    assert mag_min(*values) <= mag_max(*values)
    lo, hi = mag_min(*values), mag_max(*values)
    assert all(not v < lo for v in values)
    assert all(not hi < v for v in values)


def test_tower_products_keep_dominant_height():
    big = Magnitude.tower(7)
    bigger = Magnitude.tower(12)
    assert (big * bigger).height == 12
    assert (big * Magnitude.exact(1000)).height == 7
    tiny = bigger.reciprocal()
    assert (big * tiny).inverted  # the taller inverted factor wins
    assert (big * big.reciprocal()).as_fraction() == 1


def test_tower_powers_and_reciprocal():
    big = Magnitude.tower(8)
    assert (big**3).height == 8
    assert (big**-1).inverted
    assert (big**0).as_fraction() == 1


def test_tower_json_descriptor():
    t = Magnitude.tower(6)
    data = t.to_json()
    assert data["kind"] == "tower"
    assert data["base"] == 2
    assert data["height"] == 6
    assert data["inverted"] is False


# -- sul_bound ------------------------------------------------------------------


def test_sul_bound_floor_at_l():
    m = sul_bound(Fraction(1, 2), 4)
    assert not m < Magnitude.exact(4)


def test_sul_bound_monotone():
    for l in range(1, 21):
        assert not sul_bound(Fraction(1, 10), l) < sul_bound(Fraction(2, 10), l)
    assert not sul_bound(Fraction(1, 10), 9) < sul_bound(Fraction(1, 10), 3)


def test_sul_bound_tower_scale():
    m = sul_bound(Fraction(1, 100), 2)
    assert m.kind == "tower"
    assert m.height == 10**10
    assert m > Magnitude.exact(10**100)


def test_sul_bound_pluggable_table():
    m = sul_bound(Fraction(1, 10), 3, m_table=lambda eps, l: 7)
    assert m.as_fraction() == 7
    floored = sul_bound(Fraction(1, 10), 12, m_table=lambda eps, l: 7)
    assert floored.as_fraction() == 12


# -- schedules -------------------------------------------------------------------


def test_maint_base_case_many_epsilons():
    rng = random.Random(2)
    for _ in range(20):
        eps = Fraction(rng.randint(1, 99), 100)
        sched = schedule("maint", eps, 2)
        assert sched["xi"].as_fraction() == eps
        assert sched["L"].as_fraction() == 1


def test_maint_r3_delta_branch():
    eps = Fraction(1, 10)
    sched = schedule("maint", eps, 3)
    delta = sched["delta"]
    assert delta.is_rational
    assert delta.as_fraction() == min(eps**3 / 4, eps**15 / 4096) == eps**15 / 4096
    assert delta.as_fraction() > 0
    assert delta.as_fraction() < eps
    assert sched["xi"].kind == "tower" and sched["xi"].inverted
    assert sched["L"].kind == "tower" and not sched["L"].inverted


def test_maint_xi_nonincreasing_in_r():
    for num in (1, 2, 4):
        eps = Fraction(num, 10)
        xs = [schedule("maint", eps, r)["xi"] for r in (2, 3, 4, 5)]
        for a, b in zip(xs, xs[1:]):
            assert not a < b


def test_maint_all_positive_and_l_at_least_one():
    for eps in (Fraction(1, 10), Fraction(1, 4)):
        for r in (2, 3, 4):
            sched = schedule("maint", eps, r)
            for name, value in sched.items():
                if value is None:
                    continue
                assert not value < Magnitude.exact(Fraction(1, 10**9999)) or value.kind == "tower"
            if r > 2:
                assert not sched["L"] < Magnitude.exact(1)


def test_schedule_pure_function():
    a = schedule("maint", Fraction(1, 8), 3)
    b = schedule("maint", Fraction(1, 8), 3)
    assert a["xi"] == b["xi"] and a["delta"] == b["delta"]


def test_maint3_shape():
    sched = schedule("maint3", Fraction(1, 10), 2, k=3)
    # at r=2 the base L is 1, so delta is exactly min(eps^2/8, eps/4)
    assert sched["delta"].as_fraction() == Fraction(1, 10) ** 2 / 8
    assert sched["rho"].kind == "tower" and sched["rho"].inverted
    assert not sched["l"] < Magnitude.exact(3)
    with pytest.raises(ScheduleError):
        schedule("maint3", Fraction(1, 10), 2, k=1)


def test_rams_shape():
    sched = schedule("rams", Fraction(1, 10), 2, k=4)
    assert sched["rho"].as_fraction() == Fraction(1, 10) ** 3  # xi(eps^3, 2)
    assert sched["delta"].as_fraction() == min(
        Fraction(1, 10) ** 2 / 8, Fraction(1, 10) / 8
    )
    assert sched["K"].as_fraction() == Fraction(8 * 4, 1) / Fraction(1, 10)


def test_maintx_shape():
    sched = schedule("maintx", Fraction(1, 2), 3)
    assert sched["b"].as_fraction() == 8  # ceil(eps^-3)
    rb = ramsey_two_color_bound(8)
    assert sched["gamma"].as_fraction() == Fraction(1, 4) / (4 * rb)
    assert sched["delta"].is_rational
    base = schedule("maintx", Fraction(1, 4), 2)
    assert base["xi"].as_fraction() == Fraction(1, 4)


def test_ramsey_bound_values():
    assert ramsey_two_color_bound(2) == 2
    assert ramsey_two_color_bound(3) == 6   # C(4,2) upper bound for R(3,3)=6
    assert ramsey_two_color_bound(4) == 20


def test_ers2_values():
    sched = schedule("ers2", Fraction(1, 10), 3, c=Fraction(3, 10))
    assert sched["sigma"].as_fraction() == Fraction(3, 40)  # min(c/4, eps)
    beta = sched["beta"]
    assert beta.kind == "tower" and beta.inverted  # positive but tower-tiny
    with pytest.raises(ScheduleError):
        schedule("ers2", Fraction(1, 10), 3, c=0)
    with pytest.raises(ScheduleError):
        schedule("ers2", Fraction(1, 10), 3)


def test_schedule_domain_errors():
    with pytest.raises(ScheduleError):
        schedule("maint", Fraction(1, 10), 1)
    with pytest.raises(ScheduleError):
        schedule("maint", Fraction(11, 10), 3)
    with pytest.raises(ScheduleError):
        schedule("nosuch", Fraction(1, 10), 3)


# -- feasibility ------------------------------------------------------------------


def test_feasibility_base_case_feasible():
    rep = feasibility_report("maint", Fraction(1, 2), 2, 100)
    assert rep.feasible and rep.threshold_ok and rep.s_ok


def test_feasibility_r3_infeasible_at_desk_scale():
    rep = feasibility_report("maint", Fraction(1, 10), 3, 10**6)
    assert not rep.feasible
    assert not rep.threshold_ok


def test_feasibility_empty_graph():
    rep = feasibility_report("maint", Fraction(1, 2), 2, 0)
    assert not rep.feasible
