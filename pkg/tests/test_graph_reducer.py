import random

import pytest
from hypothesis import given, settings

from conftest import path, random_connected_graphs, star
from vdec.errors import IsTree, NotSpanningTree
from vdec.exact_solver import exact_chi_s
from vdec.graph_core import build_graph, degree_profile
from vdec.graph_reducer import (
    all_spanning_trees,
    best_bounds,
    bfs_spanning_tree,
    color_cotree,
    cor1_bound,
    cor1_details,
    cor2_bound,
    cotree_edges,
    lift_split_coloring,
    proper_edge_coloring,
    split_nontree_edges,
)
from vdec.tree_colorer import color_tree
from vdec.verifier import verify

C3 = build_graph(3, [(0, 1), (1, 2), (0, 2)])
C4 = build_graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
K4 = build_graph(4, [(a, b) for a in range(4) for b in range(a + 1, 4)])
TRI_PENDANTS = build_graph(6, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)])
THETA = build_graph(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])


def test_split_triangle_is_p5():
    s = split_nontree_edges(C3, [(0, 1), (1, 2)])
    t = s.tree
    assert t.p == 5 and t.n1 == 2 and t.diameter == 4
    assert s.pendant_pairs == {(0, 2): ((0, 3), (2, 4))}


def test_split_tree_is_identity():
    g = path(5)
    s = split_nontree_edges(g, g.edges)
    assert s.tree.graph == g and s.pendant_pairs == {}


def test_split_k4():
    s = split_nontree_edges(K4, bfs_spanning_tree(K4))
    assert s.tree.n1 == 6
    assert sum(1 for d in s.tree.graph.degrees() if d == 1) == 6


def test_split_rejects_non_spanning():
    with pytest.raises(NotSpanningTree):
        split_nontree_edges(C3, [(0, 1)])
    with pytest.raises(NotSpanningTree):
        split_nontree_edges(C4, [(0, 1), (1, 2), (1, 3)])


def test_cor1_examples():
    assert cor1_bound(TRI_PENDANTS) == 5
    assert cor1_bound(C4) is None
    assert cor1_bound(C3) is None
    with pytest.raises(IsTree):
        cor1_bound(path(4))


def test_cor1_raise_is_flagged():
    # triangle with one pendant: the split tree is the exceptional Q(1,2,0)
    paw = build_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2)])
    d = cor1_details(paw)
    assert (d.formula, d.value, d.raised) == (3, 4, True)
    assert exact_chi_s(paw).chi <= d.value


def test_cotree_examples():
    assert color_cotree(C3, [(0, 1), (1, 2)]).color_count == 1
    assert color_cotree(K4, [(0, 1), (0, 2), (0, 3)]).color_count == 3
    span = bfs_spanning_tree(THETA)
    # the BFS tree from vertex 0 leaves two cotree edges sharing vertex 1
    assert cotree_edges(THETA, span) == [(1, 3), (1, 4)]
    assert color_cotree(THETA, span).color_count == 2
    assert color_cotree(THETA, [(0, 2), (1, 2), (1, 3), (0, 4)]).color_count == 1
    with pytest.raises(NotSpanningTree):
        color_cotree(THETA, [(0, 2)])


def test_fan_coloring_random_graphs():
    rng = random.Random(3)
    for _ in range(500):
        p = rng.randint(2, 12)
        pairs = [(u, v) for u in range(p) for v in range(u + 1, p)]
        edges = rng.sample(pairs, rng.randint(1, len(pairs)))
        col = proper_edge_coloring(p, edges)
        delta = max(sum(1 for e in edges if x in e) for x in range(p))
        assert set(col) == set(edges) and max(col.values()) <= delta + 1
        for x in range(p):
            cs = [col[e] for e in edges if x in e]
            assert len(cs) == len(set(cs))


def test_cor2_examples():
    t = path(5)
    r = cor2_bound(t)
    assert r.cotree_colors == 0 and r.cor2_bound == exact_chi_s(t).chi and r.cor1_bound is None
    r = cor2_bound(C3)
    assert (r.tree_chi, r.cotree_colors, r.cor2_bound) == (2, 1, 3)
    assert exact_chi_s(C3).chi == 3
    r = cor2_bound(TRI_PENDANTS)
    assert r.cor2_bound >= exact_chi_s(TRI_PENDANTS).chi
    assert r.to_json()["cor2_bound"] == r.cor2_bound


def test_all_spanning_trees_counts():
    assert sum(1 for _ in all_spanning_trees(K4)) == 16
    assert sum(1 for _ in all_spanning_trees(C4)) == 4
    b1, b2 = best_bounds(K4)
    assert b2.cor2_bound <= cor2_bound(K4).cor2_bound


def test_lift_reports_honestly():
    split = cor1_details(TRI_PENDANTS).split
    lift = lift_split_coloring(TRI_PENDANTS, split, color_tree(split.tree))
    if lift.coloring is None:
        assert "pendants" in lift.reason or "fails" in lift.reason
    else:
        assert verify(TRI_PENDANTS, lift.coloring).is_vdec


@settings(max_examples=60, deadline=None)
@given(random_connected_graphs(3, 8, 5))
def test_reducer_properties(g):
    span = bfs_spanning_tree(g)
    split = split_nontree_edges(g, span)
    prof = degree_profile(g)
    assert split.tree.n1 == 2 * (g.q - g.p + 1) + prof.n(1)
    assert split.tree.n2 == prof.n(2) and split.tree.profile.Delta == prof.Delta
    cot = color_cotree(g, span)
    rest = cotree_edges(g, span)
    if rest:
        sub = build_graph(g.p, rest)
        assert cot.color_count <= max(sub.degrees()) + 1
        for u in range(g.p):
            cs = [cot[e] for e in sub.incident(u)]
            assert len(cs) == len(set(cs))
    r = cor2_bound(g)
    assert r.cor2_bound == r.tree_chi + r.cotree_colors
    assert exact_chi_s(g).chi <= r.cor2_bound


def test_star_cor2_tight():
    assert cor2_bound(star(4)).cor2_bound == 4


def test_split_bound_counterexample_is_genuine():
    # triangle 1-2-3 with a path 3-4-0 hanging off it; the three degree-2
    # vertices use up every 2-subset of three colors, so four colors are needed
    from vdec.exact_solver import count_vdecs

    g = build_graph(5, [(0, 4), (1, 2), (1, 3), (2, 3), (3, 4)])
    assert cor1_bound(g) == 3
    assert count_vdecs(g, 3) == 0
    assert exact_chi_s(g).chi == 4
