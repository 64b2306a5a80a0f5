import random
from math import comb

import pytest

from equipart import (
    GraphError,
    PatternGraph,
    all_nonisomorphic_graphs,
    build_graph,
    complement,
    complete_graph,
    complete_multipartite,
    count_cliques,
    count_induced,
    cycle_graph,
    cycle_pattern,
    gnp,
    named_pattern,
    naive_count_cliques,
    naive_count_induced,
    path_pattern,
)


def random_graph(n, p, seed):
    return gnp(n, p, seed=seed)


# -- canonical forms ---------------------------------------------------------


def test_canonical_form_invariant_under_relabeling_up_to_order_5():
    rng = random.Random(0)
    for n in range(2, 6):
        for graph in all_nonisomorphic_graphs(n):
            pat = PatternGraph(graph)
            perm = list(range(n))
            rng.shuffle(perm)
            relabeled = build_graph(n, [(perm[u], perm[v]) for u, v in graph.edges()])
            assert PatternGraph(relabeled).canonical == pat.canonical


def test_canonical_separates_nonisomorphic():
    for n in range(2, 6):
        atlas = all_nonisomorphic_graphs(n)
        keys = {PatternGraph(g).canonical for g in atlas}
        assert len(keys) == len(atlas)


def test_pattern_order_cap():
    with pytest.raises(GraphError):
        PatternGraph(build_graph(11, []))


def test_named_patterns():
    assert named_pattern("K3").is_complete()
    assert named_pattern("E4").is_empty()
    assert named_pattern("P3").m == 2
    assert named_pattern("C5").m == 5
    with pytest.raises(GraphError):
        named_pattern("X9")


# -- clique counting ----------------------------------------------------------


def test_count_cliques_base_cases():
    g = random_graph(9, 0.5, seed=4)
    assert count_cliques(g, 1) == 9
    assert count_cliques(g, 2) == g.m


def test_count_cliques_k5():
    assert count_cliques(complete_graph(5), 3) == comb(5, 3)


def test_count_cliques_triangle_free():
    assert count_cliques(complete_multipartite([3, 3]), 3) == 0


def test_count_cliques_matches_naive_frozen():
    g = random_graph(12, 0.5, seed=7)
    assert count_cliques(g, 4) == 12  # frozen from the naive scan
    assert naive_count_cliques(g, 4) == 12


def test_count_cliques_out_of_range():
    g = complete_graph(4)
    with pytest.raises(GraphError):
        count_cliques(g, 0)
    with pytest.raises(GraphError):
        count_cliques(g, 5)


def test_count_cliques_oracle_agreement():
    for seed in range(20):
        rng = random.Random(seed)
        n = rng.randint(4, 12)
        g = random_graph(n, rng.choice([0.2, 0.5, 0.8]), seed=seed)
        r = rng.randint(1, min(5, n))
        assert count_cliques(g, r) == naive_count_cliques(g, r)


# -- induced counting ---------------------------------------------------------


def test_p3_in_c4():
    assert count_induced(cycle_graph(4), path_pattern(3)) == 4


def test_k2_counts_edges():
    for seed in range(5):
        g = random_graph(8, 0.5, seed=seed)
        assert count_induced(g, named_pattern("K2")) == g.m


def test_complement_duality_random_pairs():
    rng = random.Random(5)
    for _ in range(100):
        n = rng.randint(4, 10)
        g = random_graph(n, rng.random(), seed=rng.randrange(10**6))
        r = rng.randint(2, 4)
        pat = PatternGraph(gnp(r, rng.random(), seed=rng.randrange(10**6)))
        assert count_induced(g, pat) == count_induced(complement(g), pat.complement())


def test_induced_counts_partition_all_subsets():
    rng = random.Random(9)
    for r in (2, 3, 4):
        atlas = [PatternGraph(g) for g in all_nonisomorphic_graphs(r)]
        for _ in range(6):
            n = rng.randint(r, 10)
            g = random_graph(n, rng.random(), seed=rng.randrange(10**6))
            total = sum(count_induced(g, pat) for pat in atlas)
            assert total == comb(n, r)


def test_induced_matches_naive():
    rng = random.Random(13)
    for _ in range(25):
        n = rng.randint(4, 10)
        g = random_graph(n, rng.random(), seed=rng.randrange(10**6))
        r = rng.randint(2, 4)
        pat = PatternGraph(gnp(r, rng.random(), seed=rng.randrange(10**6)))
        assert count_induced(g, pat) == naive_count_induced(g, pat)


def test_induced_pattern_larger_than_graph():
    assert count_induced(complete_graph(3), cycle_pattern(5)) == 0


def test_c5_self_complementary():
    c5 = PatternGraph(cycle_graph(5))
    assert c5.complement() == c5
