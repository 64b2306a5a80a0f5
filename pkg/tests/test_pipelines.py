import random
from fractions import Fraction
from itertools import combinations
from math import comb

import pytest

from equipart import (
    ClusterColoring,
    Partition,
    PipelineError,
    PipelineParams,
    blowup,
    build_graph,
    complement,
    complete_graph,
    complete_multipartite,
    cycle_graph,
    edge_count_within,
    empty_graph,
    gnm,
    gnp,
    named_pattern,
    ramsey_group_clusters,
    refine_mixed_partition,
    scoop,
    shuffled,
    sparse_dense_partition,
    sparse_equitable_partition,
    sparse_uniform_partition,
    uniform_partition,
)
from equipart.experiments import planted_mixed_instance


EPS = Fraction(1, 4)


def params(**kw):
    defaults = dict(epsilon=EPS, r=3)
    defaults.update(kw)
    return PipelineParams(**defaults)


# -- params ---------------------------------------------------------------------


def test_params_validation():
    with pytest.raises(PipelineError):
        PipelineParams(epsilon=Fraction(1, 4), delta=Fraction(1, 2))
    with pytest.raises(PipelineError):
        PipelineParams(l=0)
    with pytest.raises(PipelineError):
        PipelineParams(l=8, max_k=4)


def test_params_file_roundtrip(tmp_path):
    path = tmp_path / "run.params"
    path.write_text(
        "# pipeline knobs\n"
        "epsilon = 1/4\n"
        "r=3\n"
        "delta=0.05\n"
        "l=2\n"
        "max_k=32\n"
        "seed=7\n"
        "mode=sparse\n"
        "strategy=conditional\n"
    )
    p = PipelineParams.from_file(path)
    assert p.epsilon == Fraction(1, 4)
    assert p.delta == Fraction(1, 20)
    assert p.max_k == 32
    assert p.seed == 7
    with pytest.raises(FileNotFoundError):
        PipelineParams.from_file(tmp_path / "missing.params")


def test_params_file_rejects_unknown_key(tmp_path):
    path = tmp_path / "bad.params"
    path.write_text("nonsense=1\n")
    with pytest.raises(PipelineError):
        PipelineParams.from_file(path)


# -- uniform partition ------------------------------------------------------------


def test_uniform_partition_complete_graph_immediate():
    g = complete_graph(24)
    res = uniform_partition(g, params(l=2, delta=Fraction(1, 10)))
    assert res.status == "complete"
    assert res.partition.q == 2
    assert res.report.bad_pair_count == 0


def test_uniform_partition_empty_graph_immediate():
    g = empty_graph(24)
    res = uniform_partition(g, params(l=3, delta=Fraction(1, 10)))
    assert res.status == "complete"
    assert res.partition.q == 3


def test_uniform_partition_two_cliques_index_order():
    g = complement(complete_multipartite([64, 64]))
    res = uniform_partition(g, params(l=2, delta=EPS))
    assert res.status == "complete"
    dens = [
        Fraction(edge_count_within(g, c), comb(len(c), 2))
        for c in res.partition.classes
    ]
    assert dens == [1, 1]
    assert res.report.bad_pair_count == 0


def test_uniform_partition_two_cliques_shuffled_refines():
    g = shuffled(complement(complete_multipartite([64, 64])), seed=5)
    res = uniform_partition(
        g, params(l=2, delta=Fraction(1, 10), max_k=32, max_rounds=60)
    )
    assert res.status == "complete"
    assert res.partition.q > 2  # genuine refinement happened
    assert res.report.passed


def test_uniform_partition_trace_monotone():
    rng = random.Random(4)
    for seed in range(6):
        g = gnp(48, rng.random(), seed=seed)
        res = uniform_partition(
            g, params(l=2, delta=Fraction(1, 8), max_k=16, seed=seed)
        )
        idx = [x[1] for x in res.trace]
        assert all(a <= b for a, b in zip(idx, idx[1:]))


def test_uniform_partition_budget_exhaustion_is_explicit():
    g = gnp(40, 0.5, seed=2)
    res = uniform_partition(g, params(l=2, max_k=2, delta=Fraction(1, 100)))
    assert res.status == "incomplete"
    assert res.reasons


# -- sparse equitable pipeline ------------------------------------------------------


def test_sparse_equitable_r2_delegates_to_scoop():
    g = empty_graph(20)
    p = params(r=2, s_override=3, epsilon=Fraction(1, 2))
    res = sparse_equitable_partition(g, 2, Fraction(1, 2), p)
    assert res.status == "complete"
    direct = scoop(g, range(20), 3, Fraction(1, 2))
    # same classes before the final evening-out step
    assert res.s == 3
    assert res.partition.q == direct.partition.q == 4
    assert res.partition.is_equitable()


def test_sparse_equitable_k64_64():
    g = complete_multipartite([64, 64])
    res = sparse_equitable_partition(g, 3, EPS, params())
    assert res.status == "complete"
    assert res.partition.is_equitable()
    assert len(res.partition.exceptional) < res.partition.q
    assert all(c.tag == "sparse" and c.threshold == EPS for c in res.certificate.classes)


def test_sparse_equitable_rejects_r1():
    with pytest.raises(PipelineError):
        sparse_equitable_partition(complete_graph(8), 1, EPS)


def test_sparse_equitable_clique_incomplete_with_tiny_xi():
    # k_3(K_64) is huge; with a tiny manual classification coefficient
    # nothing is low-count and the sparse-only pipeline cannot certify.
    g = complete_graph(64)
    p = params(xi_override=Fraction(1, 10**9), epsilon=Fraction(1, 5))
    res = sparse_equitable_partition(g, 3, Fraction(1, 5), p)
    assert res.status == "incomplete"
    assert res.reasons


def test_complement_duality_dense_mode():
    g = gnm(60, 40, seed=8)
    p_sparse = params(seed=11)
    p_dense = params(seed=11, mode="dense")
    sparse_on_complement = sparse_equitable_partition(complement(g), 3, EPS, p_sparse)
    dense_on_g = sparse_equitable_partition(g, 3, EPS, p_dense)
    assert dense_on_g.partition == sparse_on_complement.partition
    for c_dense, c_sparse in zip(
        dense_on_g.certificate.classes, sparse_on_complement.certificate.classes
    ):
        if c_sparse.tag == "sparse":
            assert c_dense.tag == "dense"
            assert c_dense.threshold == c_sparse.threshold


def test_partition_validity_structural_on_outputs():
    rng = random.Random(0)
    for seed in range(8):
        n = rng.randint(24, 60)
        g = gnm(n, rng.randint(0, n), seed=seed)
        res = sparse_equitable_partition(g, 3, EPS, params(seed=seed))
        res.partition.validate(require_cover=True)


def test_pipeline_identical_seeds_identical_outputs():
    g = gnm(50, 20, seed=4)
    a = sparse_equitable_partition(g, 3, EPS, params(seed=9, strategy="sampled"))
    b = sparse_equitable_partition(g, 3, EPS, params(seed=9, strategy="sampled"))
    assert a.partition == b.partition
    assert a.certificate == b.certificate


def test_pipeline_result_json_shape():
    g = complete_multipartite([16, 16])
    res = sparse_uniform_partition(g, 3, EPS, 2, params())
    data = res.to_json()
    assert {"n", "q", "class_size", "exceptional", "classes", "certificate",
            "status", "seed", "reasons", "s", "uniformity_report"} <= set(data)
    assert data["status"] in ("Complete", "Incomplete")


# -- sparse uniform pipeline ---------------------------------------------------------


def test_sparse_uniform_empty_graph():
    g = empty_graph(64)
    res = sparse_uniform_partition(g, 3, EPS, 4, params())
    assert res.status == "complete"
    assert res.partition.q >= 4
    assert res.report.bad_pair_count == 0


def test_sparse_uniform_k64_64():
    g = complete_multipartite([64, 64])
    res = sparse_uniform_partition(g, 3, EPS, 2, params())
    assert res.status == "complete"
    assert Fraction(res.report.bad_pair_count) <= EPS * res.partition.q**2
    assert all(c.tag == "sparse" for c in res.certificate.classes)


def test_sparse_uniform_q_lower_bound_random_inputs():
    rng = random.Random(3)
    for trial in range(20):
        n = rng.randint(40, 90)
        m = rng.randint(0, n // 2)
        g = gnm(n, m, seed=trial)
        k_min = rng.randint(2, 4)
        res = sparse_uniform_partition(g, 3, EPS, k_min, params(seed=trial))
        if res.status == "complete":
            assert res.partition.q >= k_min


# -- Ramsey grouping -----------------------------------------------------------------


def all_colored(g_count, color):
    return ClusterColoring(
        g_count, {pair: color for pair in combinations(range(g_count), 2)}
    )


def test_group_all_red_pairs():
    grouping = ramsey_group_clusters(all_colored(10, "red"), 2)
    assert len(grouping.groups) == 5
    assert not grouping.leftover
    assert all(color == "red" for color, _ in grouping.groups)


def test_group_all_green_pairs():
    grouping = ramsey_group_clusters(all_colored(10, "green"), 2)
    assert not grouping.groups
    assert grouping.leftover == frozenset(range(10))
    assert grouping.green_fraction == 1


def test_group_red_and_blue_blocks():
    colors = {}
    for i, j in combinations(range(9), 2):
        if i < 4 and j < 4:
            colors[(i, j)] = "red"
        elif i >= 4 and j >= 4:
            colors[(i, j)] = "blue"
        else:
            colors[(i, j)] = "green"
    grouping = ramsey_group_clusters(ClusterColoring(9, colors), 3)
    kinds = sorted(color for color, _ in grouping.groups)
    assert kinds == ["blue", "red"]
    assert len(grouping.leftover) == 3
    for color, members in grouping.groups:
        for i, j in combinations(sorted(members), 2):
            assert colors[(i, j)] == color


def test_group_greedy_large_b():
    grouping = ramsey_group_clusters(all_colored(12, "blue"), 6, seed=1)
    assert len(grouping.groups) == 2
    assert all(color == "blue" for color, _ in grouping.groups)


def test_grouping_structural_validation():
    rng = random.Random(7)
    for trial in range(10):
        g_count = rng.randint(4, 12)
        colors = {
            pair: rng.choice(["red", "blue", "green"])
            for pair in combinations(range(g_count), 2)
        }
        coloring = ClusterColoring(g_count, colors)
        grouping = ramsey_group_clusters(coloring, rng.choice([2, 3]), seed=trial)
        grouping.validate(coloring)  # raises on any structural defect
        used = set()
        for _, members in grouping.groups:
            assert not used & members
            used |= members
        assert used | grouping.leftover == set(range(g_count))


def test_coloring_requires_complete():
    with pytest.raises(PipelineError):
        ClusterColoring(3, {(0, 1): "red"})


# -- sparse/dense pipeline -------------------------------------------------------------


def test_sparse_dense_base_k2_on_complete_graph():
    # the edge pattern points at the graph itself, but on a complete
    # graph only the complement side can be scooped: one dense family
    g = complete_graph(40)
    res = sparse_dense_partition(g, "K2", EPS, params(mode="sparse_or_dense"))
    assert res.status == "complete"
    assert all(c.tag == "dense" for c in res.certificate.classes)
    assert any("scooping the dense side" in r for r in res.reasons)


def test_sparse_dense_base_nonedge_pattern():
    g = complete_graph(40)
    res = sparse_dense_partition(g, "E2", EPS, params(mode="sparse_or_dense"))
    assert res.status == "complete"
    assert all(c.tag == "dense" for c in res.certificate.classes)


def test_sparse_dense_split_union():
    # disjoint union of a clique and an independent set; pattern P3;
    # l=4 so the clique side spans two clusters and can be grouped
    edges = [(u, v) for u in range(64) for v in range(u + 1, 64)]
    g = build_graph(128, edges)
    p = params(mode="sparse_or_dense", epsilon=Fraction(1, 5), l=4)
    res = sparse_dense_partition(g, named_pattern("P3"), Fraction(1, 5), p)
    assert res.status == "complete"
    tags = {c.tag for c in res.certificate.classes}
    assert tags == {"sparse", "dense"}
    # no induced P3 inside any class: classes are homogeneous
    for cls in res.partition.classes:
        e = edge_count_within(g, cls)
        assert e in (0, comb(len(cls), 2))


def test_sparse_dense_c5_blowup_triangle_pattern():
    g = blowup(cycle_graph(5), 20)
    p = params(mode="sparse_or_dense", l=5)
    res = sparse_dense_partition(g, "K3", EPS, p)
    assert res.status == "complete"
    assert all(c.tag == "sparse" for c in res.certificate.classes)
    assert len(res.partition.exceptional) < res.partition.q


def test_sparse_dense_rejects_tiny_pattern():
    with pytest.raises(PipelineError):
        sparse_dense_partition(complete_graph(8), named_pattern("K1"), EPS)


# -- refinement --------------------------------------------------------------------------


def test_refine_empty_plus_clique_classes():
    n = 64
    edges = [(u, v) for u in range(32, 64) for v in range(u + 1, 64)]
    g = build_graph(n, edges)
    initial = Partition(
        n, (frozenset(range(32)), frozenset(range(32, 64))), frozenset()
    )
    res = refine_mixed_partition(g, initial, 3, EPS, params())
    assert res.status == "complete"
    tags = {c.tag for c in res.certificate.classes}
    assert tags == {"sparse", "dense"}


def test_refine_planted_instance_certified():
    g, initial = planted_mixed_instance(32)
    res = refine_mixed_partition(g, initial, 3, EPS, params())
    assert res.status == "complete"
    assert res.partition.q >= initial.q
    assert res.report.passed


def test_refine_preserves_class_count_random():
    rng = random.Random(11)
    for trial in range(8):
        block = rng.choice([16, 24])
        g, initial = planted_mixed_instance(block)
        res = refine_mixed_partition(g, initial, 3, EPS, params(seed=trial))
        if res.status == "complete":
            assert res.partition.q >= initial.q
            assert res.partition.class_size is not None


def test_refine_reports_precondition_violation_per_class():
    # a mid-density class has many cliques on both sides
    g = gnp(48, 0.5, seed=1)
    initial = Partition(
        48, (frozenset(range(24)), frozenset(range(24, 48))), frozenset()
    )
    res = refine_mixed_partition(g, initial, 3, EPS, params())
    assert any("few-cliques precondition" in r for r in res.reasons)


def test_pipelines_structural_invariants_random_chaos():
    # pipelines may return incomplete on hostile inputs but must never
    # produce structurally invalid partitions or unrecomputable
    # certificates, and q-vs-V0 accounting must match the status
    from equipart import recheck_certificate

    rng = random.Random(42)
    patterns = ["K2", "E2", "K3", "P3", "C4"]
    for trial in range(18):
        n = rng.randint(12, 72)
        kind = trial % 3
        if kind == 0:
            g = gnp(n, rng.random(), seed=trial)
        elif kind == 1:
            g = gnm(n, rng.randint(0, n), seed=trial)
        else:
            g = complement(gnm(n, rng.randint(0, n), seed=trial))
        p = params(
            seed=trial,
            l=rng.randint(1, 4),
            max_k=rng.choice([4, 8, 16]),
            delta=Fraction(rng.randint(1, 4), 20),
            strategy=rng.choice(["conditional", "sampled"]),
            mode="sparse_or_dense",
        )
        if trial % 2:
            res = sparse_dense_partition(g, rng.choice(patterns), EPS, p)
        else:
            p.mode = "sparse"
            res = sparse_equitable_partition(g, rng.choice([2, 3, 4]), EPS, p)
        res.partition.validate(require_cover=True)
        if res.certificate is not None:
            assert recheck_certificate(g, res.partition, res.certificate)
        if res.status == "complete":
            assert res.partition.q > 0
            assert len(res.partition.exceptional) < res.partition.q
            assert res.certificate.complete
        else:
            assert res.reasons
