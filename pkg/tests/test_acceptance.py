"""Acceptance gate: one test per criterion, each at its stated tolerance.

Run with -s to see one PASS line per criterion, e.g.
    pytest tests/test_acceptance.py -v -s
"""

import random
import time
from fractions import Fraction
from math import ceil, comb

from equipart import (
    Magnitude,
    PatternGraph,
    PipelineParams,
    all_nonisomorphic_graphs,
    average_bound,
    balanced_cut_search,
    blowup,
    complete_graph,
    complete_multipartite,
    count_cliques,
    count_induced,
    cycle_graph,
    edge_count_within,
    exhaustive_balanced_cut,
    feasibility_report,
    gnm,
    gnp,
    judicious_bipartition,
    min_edge_subset,
    naive_count_cliques,
    naive_count_induced,
    phi,
    phi_inequality_check,
    recheck_certificate,
    schedule,
    scoop,
    sparse_dense_partition,
    sparse_equitable_partition,
    turan,
    verify_slice_bound,
)
from equipart.experiments import lemma_pair_corpus, uniform_pair_corpus
from equipart.uniformity import (
    count_low_common_rsets,
    count_low_induced_witness_rsets,
    count_shrinking_rsets,
)


def report(number: int, label: str, elapsed: float) -> None:
    print(f"\nACCEPTANCE {number:2d} PASS ({elapsed:6.1f}s): {label}")


def test_criterion_1_counting_oracle_equivalence():
    t0 = time.time()
    rng = random.Random(1)
    for trial in range(500):
        n = rng.randint(4, 12)
        g = gnp(n, rng.choice([0.2, 0.4, 0.6, 0.8]), seed=trial)
        r = rng.randint(1, min(5, n))
        assert count_cliques(g, r) == naive_count_cliques(g, r)
        pat_order = rng.randint(2, 4) if trial % 25 else min(5, n)
        pat_order = min(pat_order, n)
        pat = PatternGraph(gnp(pat_order, rng.random(), seed=10**6 + trial))
        assert count_induced(g, pat) == naive_count_induced(g, pat)
    elapsed = time.time() - t0
    assert elapsed < 60
    report(1, "counting kernels match naive enumeration on 500 graphs", elapsed)


def test_criterion_2_scooping_lemma_reproduction():
    t0 = time.time()
    failures = 0
    for trial in range(1000):
        rng = random.Random(trial)
        n = rng.randint(50, 300)
        eps = Fraction(rng.choice([2, 3, 5]), 10)
        m = rng.randint(0, int(eps**3 * comb(n, 2)))
        g = gnm(n, m, seed=trial)
        s = int(eps * n / 3)
        res = scoop(g, range(n), s, eps, strategy="conditional", seed=trial)
        ok = (
            res.precondition_held
            and len(res.partition.exceptional) <= ceil(eps * n)
            and all(
                Fraction(edge_count_within(g, cls)) < eps * comb(s, 2)
                for cls in res.partition.classes
            )
        )
        if not ok:
            failures += 1
    elapsed = time.time() - t0
    assert failures == 0
    assert elapsed < 120
    report(2, "1000/1000 scooping runs met |V0| and class-density bounds", elapsed)


def test_criterion_3_conditional_expectation_bound():
    t0 = time.time()
    for trial in range(500):
        rng = random.Random(2000 + trial)
        p = rng.randint(6, 24)
        s = rng.randint(2, max(2, p // 2))
        g = gnp(p, rng.random(), seed=trial)
        pool = range(p)
        cond = min_edge_subset(g, pool, s, strategy="conditional")
        cond_e = Fraction(edge_count_within(g, cond))
        assert cond_e <= average_bound(g, pool, s)
        if comb(p, s) <= 10**5:
            exact = min_edge_subset(g, pool, s, strategy="exact")
            assert edge_count_within(g, exact) <= cond_e
    elapsed = time.time() - t0
    assert elapsed < 60
    report(3, "conditional-expectation bound held on 500 instances", elapsed)


def test_criterion_4_phi_inequality():
    t0 = time.time()
    for n in range(2, 8):
        for g in all_nonisomorphic_graphs(n):
            assert phi_inequality_check(g).passed
    rng = random.Random(4)
    for trial in range(500):
        n = rng.randint(4, 16)
        g = gnp(n, rng.random(), seed=trial)
        assert phi_inequality_check(g).passed
    for n in range(2, 11):
        g = complete_graph(n)
        for k in range(1, n):
            assert phi(g, k).value == Fraction(-1, 2)
    elapsed = time.time() - t0
    assert elapsed < 300
    report(4, "phi inequality exhaustive n<=7 plus 500 random n<=16, spot value exact", elapsed)


def test_criterion_5_slicing_bound():
    t0 = time.time()
    eps = Fraction(1, 4)
    pairs = uniform_pair_corpus(100, eps, max_side=7, seed=5)
    assert len(pairs) == 100
    violations = 0
    for g, a, b in pairs:
        for alpha in (Fraction(3, 10), Fraction(1, 2)):
            audit = verify_slice_bound(g, a, b, eps, alpha)
            violations += len(audit.violations)
    elapsed = time.time() - t0
    assert violations == 0
    assert elapsed < 300
    report(5, "100 uniform pairs: every qualifying sub-pair passed at eps'", elapsed)


def test_criterion_6_lemma_ceilings():
    t0 = time.time()
    pairs = lemma_pair_corpus(200, seed=6)
    assert len(pairs) == 200
    live = {"shrinking": 0, "low_common": 0, "induced_witness": 0}
    for g, a, b, eps in pairs:
        assert len(a) <= 12
        for r in (1, 2, 3):
            res = count_shrinking_rsets(g, a, b, b, r, eps)
            if res.precondition_holds:
                live["shrinking"] += 1
                assert res.within_ceiling
            res = count_low_common_rsets(g, a, b, eps, r)
            if res.precondition_holds:
                live["low_common"] += 1
                assert res.within_ceiling
            res = count_low_induced_witness_rsets(g, a, b, eps, r)
            if res.precondition_holds:
                live["induced_witness"] += 1
                assert res.within_ceiling
    elapsed = time.time() - t0
    assert live["shrinking"] > 0 and live["low_common"] > 0
    assert elapsed < 300
    report(6, f"lemma ceilings never exceeded (live instances: {live})", elapsed)


def test_criterion_7_pipelines_end_to_end():
    t0 = time.time()
    eps = Fraction(1, 4)

    g1 = complete_multipartite([64, 64])
    res1 = sparse_equitable_partition(g1, 3, eps, PipelineParams(epsilon=eps, r=3))
    assert res1.status == "complete"
    assert len(res1.partition.exceptional) < res1.partition.q
    assert all(
        c.tag == "sparse" and c.threshold == eps for c in res1.certificate.classes
    )
    assert recheck_certificate(g1, res1.partition, res1.certificate)

    g2 = blowup(cycle_graph(5), 20)
    assert g2.n == 100
    res2 = sparse_dense_partition(
        g2, "K3", eps, PipelineParams(epsilon=eps, r=3, l=5, mode="sparse_or_dense")
    )
    assert res2.status == "complete"
    assert len(res2.partition.exceptional) < res2.partition.q
    assert all(c.threshold == eps for c in res2.certificate.classes)
    assert recheck_certificate(g2, res2.partition, res2.certificate)

    elapsed = time.time() - t0
    assert elapsed < 120
    report(7, "pipelines complete and bit-exactly certified on structured inputs", elapsed)


def test_criterion_8_judicious_bipartition():
    t0 = time.time()
    eps = Fraction(1, 4)
    for g in (complete_multipartite([64, 64]), turan(128, 2)):
        res = judicious_bipartition(g, 3, eps)
        assert res.status == "complete"
        e1 = edge_count_within(g, res.v1)
        e2 = edge_count_within(g, res.v2)
        assert Fraction(e1) < eps * len(res.v1) ** 2
        assert Fraction(e2, len(res.v2) ** 2) < Fraction(g.m, g.n**2)
    elapsed = time.time() - t0
    assert elapsed < 60
    report(8, "judicious split: sparse V1 and strictly improved V2 on both inputs", elapsed)


def test_criterion_9_balanced_cut_harness():
    t0 = time.time()
    for seed in range(10):
        g = gnp(20, 0.6, seed=seed)
        # keep only cross edges of a 10+10 split: K_3-free by construction
        from equipart import build_graph

        edges = [(u, v) for u, v in g.edges() if (u < 10) != (v < 10)]
        g = build_graph(20, edges)
        assert count_cliques(g, 3) == 0
        res = balanced_cut_search(g, PipelineParams(epsilon=Fraction(1, 4), seed=seed))
        _, best = exhaustive_balanced_cut(g)
        assert res.cut == best
        assert Fraction(best, g.m) > Fraction(1, 2)
    elapsed = time.time() - t0
    assert elapsed < 300
    report(9, "local search matched the exhaustive balanced-cut optimum on 10 seeds", elapsed)


def test_criterion_10_constants_schedule():
    t0 = time.time()
    rng = random.Random(10)
    for _ in range(20):
        eps = Fraction(rng.randint(1, 99), 100)
        sched = schedule("maint", eps, 2)
        assert sched["xi"].as_fraction() == eps
        assert sched["L"].as_fraction() == 1
    for num in (5, 10, 25):
        eps = Fraction(num, 100)
        sched = schedule("maint", eps, 3)
        delta = sched["delta"].as_fraction()
        assert delta > 0
        assert delta <= eps**15 / 4096
        # xi is strictly positive: a reciprocal tower, below every rational
        assert sched["xi"].kind == "tower" and sched["xi"].inverted
        assert sched["xi"] < Magnitude.exact(delta)
    rep = feasibility_report("maint", Fraction(1, 10), 3, 10**6)
    assert not rep.feasible
    elapsed = time.time() - t0
    assert elapsed < 10
    report(10, "schedule base case exact, r=3 branch honored, desk infeasibility declared", elapsed)
