import itertools

import pytest
from hypothesis import given, settings

from conftest import path, random_connected_graphs, star, trees_of
from vdec.errors import BudgetExceeded, Infeasible, StructurallyUncolorable
from vdec.exact_solver import SolverConfig, count_vdecs, edge_order, exact_chi_es, exact_chi_s, find_vdec, naive_chi_s
from vdec.graph_core import build_graph, degree_profile
from vdec.verifier import EdgeColoring, conjecture_lower_bound, verify

S33 = build_graph(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])


def test_chi_s_examples():
    assert exact_chi_s(path(5)).chi == 4
    assert exact_chi_s(star(3)).chi == 3
    assert exact_chi_s(path(6)).chi == 4


def test_chi_es_examples():
    r = exact_chi_es(S33)
    assert r.chi == 5 and verify(S33, r.witness).equitable
    assert sorted(r.witness.class_sizes()) == [1] * 5
    assert exact_chi_es(path(5)).chi == 4


def test_single_edge_uncolorable():
    with pytest.raises(StructurallyUncolorable):
        exact_chi_s(build_graph(2, [(0, 1)]))
    with pytest.raises(StructurallyUncolorable):
        exact_chi_es(build_graph(2, [(0, 1)]))


def test_budget_and_palette_cap():
    with pytest.raises(BudgetExceeded):
        exact_chi_s(path(6), SolverConfig(node_budget=3))
    with pytest.raises(Infeasible):
        exact_chi_s(path(5), SolverConfig(max_palette=3))


def test_count_examples():
    assert count_vdecs(path(3), 2) == 2
    assert count_vdecs(path(5), 3) == 0
    assert count_vdecs(star(3), 3) == 6


def _brute_count(g, k):
    n = 0
    for cols in itertools.product(range(1, k + 1), repeat=g.q):
        if verify(g, EdgeColoring(dict(zip(g.edges, cols)), k)).is_vdec:
            n += 1
    return n


def test_count_against_brute_force():
    for p in range(3, 7):
        for t in trees_of(p):
            for k in range(2, 5):
                assert count_vdecs(t.graph, k) == _brute_count(t.graph, k)


def test_edge_order_descending_degree_sum():
    g = build_graph(6, [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5)])
    degs = g.degrees()
    sums = [degs[g.edges[i][0]] + degs[g.edges[i][1]] for i in edge_order(g)]
    assert sums == sorted(sums, reverse=True)


def test_fixed_preassignment_respected():
    g = path(5)
    c, _ = find_vdec(g, 4, fixed={(0, 1): 4})
    assert c is not None and c[(0, 1)] == 4 and verify(g, c).is_vdec
    c, _ = find_vdec(g, 4, fixed={(0, 1): 1, (1, 2): 1})
    assert c is None


def test_oracles_agree_on_small_trees():
    for p in range(3, 8):
        for t in trees_of(p):
            pruned = exact_chi_s(t.graph).chi
            assert pruned == exact_chi_s(t.graph, SolverConfig(symmetry=False)).chi
            assert pruned == naive_chi_s(t.graph)


@settings(max_examples=60, deadline=None)
@given(random_connected_graphs(3, 7, 4))
def test_solver_properties(g):
    r = exact_chi_s(g)
    rep = verify(g, r.witness)
    assert rep.is_vdec and r.witness.color_count == r.chi
    assert r.chi >= conjecture_lower_bound(degree_profile(g))
    c, _ = find_vdec(g, r.chi - 1)
    assert c is None
    e = exact_chi_es(g)
    assert e.chi >= r.chi and verify(g, e.witness).equitable
