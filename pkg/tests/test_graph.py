import pytest
from fractions import Fraction

from equipart import (
    GraphError,
    build_graph,
    complement,
    complete_graph,
    complete_multipartite,
    cycle_graph,
    edge_count_between,
    edge_count_within,
    gnp,
    pair_density,
)


def petersen():
    return build_graph(10, [
        (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
        (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
        (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
    ])


def test_build_triangle():
    g = build_graph(3, [(0, 1), (1, 2), (0, 2)])
    assert g.m == 3
    assert g.has_edge(0, 2) and g.has_edge(2, 0)


def test_build_empty():
    g = build_graph(4, [])
    assert g.m == 0


def test_build_dedup():
    g = build_graph(5, [(0, 1), (0, 1), (1, 0)])
    assert g.m == 1


def test_build_rejects_self_loop():
    with pytest.raises(GraphError):
        build_graph(3, [(1, 1)])


def test_build_rejects_out_of_range():
    with pytest.raises(GraphError):
        build_graph(3, [(0, 3)])


def test_complement_of_complete_is_empty():
    g = complement(complete_graph(5))
    assert g.m == 0


def test_complement_involution():
    g = gnp(9, 0.4, seed=11)
    assert complement(complement(g)) == g


def test_complement_edge_budget():
    for seed in range(5):
        g = gnp(8, 0.5, seed=seed)
        assert g.m + complement(g).m == 8 * 7 // 2


def test_edge_count_within_k5():
    g = complete_graph(5)
    assert edge_count_within(g, [0, 1, 2]) == 3


def test_edge_count_within_small_sets():
    g = gnp(8, 0.7, seed=2)
    assert edge_count_within(g, []) == 0
    assert edge_count_within(g, [3]) == 0


def test_edge_count_within_petersen_outer_cycle():
    assert edge_count_within(petersen(), range(5)) == 5


def test_edge_count_within_equals_m():
    g = gnp(10, 0.5, seed=3)
    assert edge_count_within(g, range(10)) == g.m


def test_edge_count_between_k33():
    g = complete_multipartite([3, 3])
    assert edge_count_between(g, [0, 1, 2], [3, 4, 5]) == 9


def test_edge_count_between_empty_graph():
    g = build_graph(6, [])
    assert edge_count_between(g, [0, 1], [2, 3]) == 0


def test_edge_count_between_matches_naive_double_loop():
    g = gnp(10, 0.5, seed=1)
    a, b = set(range(5)), set(range(5, 10))
    naive = sum(1 for u in a for v in b if g.has_edge(u, v))
    assert naive == 19  # frozen from the naive loop
    assert edge_count_between(g, a, b) == naive


def test_edge_count_between_symmetric():
    g = gnp(9, 0.5, seed=8)
    a, b = [0, 2, 4], [1, 3, 5, 7]
    assert edge_count_between(g, a, b) == edge_count_between(g, b, a)


def test_edge_count_between_rejects_overlap_and_empty():
    g = complete_graph(4)
    with pytest.raises(GraphError):
        edge_count_between(g, [0, 1], [1, 2])
    with pytest.raises(GraphError):
        edge_count_between(g, [], [1, 2])


def test_pair_density_complete_and_empty():
    g = complete_multipartite([3, 3])
    assert pair_density(g, [0, 1, 2], [3, 4, 5]) == 1
    e = build_graph(6, [])
    assert pair_density(e, [0, 1, 2], [3, 4, 5]) == 0


def test_pair_density_k33_minus_one_edge():
    edges = [(u, v) for u in range(3) for v in range(3, 6)]
    edges.remove((0, 3))
    g = build_graph(6, edges)
    assert pair_density(g, [0, 1, 2], [3, 4, 5]) == Fraction(8, 9)


def test_cycle_complement_self():
    c5 = cycle_graph(5)
    comp = complement(c5)
    # the complement of the 5-cycle is the pentagram, again a 5-cycle
    assert comp.m == 5
    assert all(comp.degree(v) == 2 for v in range(5))
