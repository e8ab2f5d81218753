import json
import random
from collections import Counter

import pytest
from hypothesis import given, settings

from conftest import hypothesis_trees, path, random_tree, random_trees, star, trees_of
from vdec.conjecture_lab.shapes import shape_builder
from vdec.errors import HypothesisViolated, TooSmall
from vdec.exact_solver import exact_chi_s
from vdec.graph_core import DiamFour, DoubleStar, as_tree, tree_from_edges
from vdec.tree_colorer import (
    ColoringTrace,
    Regime,
    color_diam4,
    color_double_star,
    color_tree,
    equitable_finish,
    find_balancing_vertex,
    predict_chi_s,
)
from vdec.verifier import verify


def test_predict_examples():
    assert predict_chi_s(as_tree(path(5))).value == 4
    assert predict_chi_s(as_tree(path(5))).regime is Regime.PATH_P5
    c1 = shape_builder(DiamFour(0, 1, (2,)))
    assert c1.n1 == 3 and predict_chi_s(c1).value == 4
    assert predict_chi_s(shape_builder(DiamFour(0, 3))).value == 3
    assert predict_chi_s(as_tree(star(3))).regime is Regime.STAR
    with pytest.raises(HypothesisViolated):
        predict_chi_s(as_tree(path(6)))
    with pytest.raises(TooSmall):
        predict_chi_s(as_tree(path(2)))


def test_double_star_closed_form():
    c = color_double_star(1, 1)
    assert [c[e] for e in [(0, 2), (0, 1), (1, 3)]] == [1, 2, 3]
    c = color_double_star(2, 2)
    assert [c[(0, 2)], c[(0, 3)], c[(0, 1)], c[(1, 4)], c[(1, 5)]] == [1, 2, 3, 4, 5]
    assert color_double_star(3, 1).color_count == 5
    for m in range(1, 6):
        for n in range(1, 6):
            c = color_double_star(m, n)
            t = tree_from_edges(m + n + 2, list(c.assignment))
            assert t.diameter == 3
            r = verify(t.graph, c)
            assert r.is_vdec and r.equitable and c.color_count == m + n + 1
            assert set(c.class_sizes()) == {1}


def test_diam4_case_a2_formula():
    t = shape_builder(DiamFour(0, 3))
    c = color_diam4(DiamFour(0, 3))
    # builder: center 0, legs (1,2), (3,4), (5,6)
    assert [c[(1, 2)], c[(3, 4)], c[(5, 6)]] == [1, 2, 3]
    assert [c[(0, 1)], c[(0, 3)], c[(0, 5)]] == [2, 3, 1]
    assert verify(t.graph, c).is_vdec and c.color_count == 3


def test_diam4_small_examples():
    assert color_diam4(DiamFour(0, 1, (2,))).color_count == 4
    sh = DiamFour(0, 1, (2, 2))
    c = color_diam4(sh)
    t = shape_builder(sh)
    assert t.n1 == 5 and c.color_count == 5 and verify(t.graph, c).is_vdec
    assert c[(1, 2)] == 1


def _diam4_grid(max_p):
    for r in range(0, 5):
        for m in range(0, 6):
            for n in range(0, 4):
                for legs in _partitions(n, max_p):
                    sh = DiamFour(r, m, legs)
                    if m + n < 2 or 1 + r + 2 * m + n + sum(legs) > max_p:
                        continue
                    yield sh


def _partitions(n, max_p, lo=2):
    if n == 0:
        yield ()
        return
    for first in range(lo, max_p):
        for rest in _partitions(n - 1, max_p, first):
            yield (first,) + rest


def test_diam4_closed_forms_on_grid():
    seen = 0
    for sh in _diam4_grid(13):
        t = shape_builder(sh)
        c = color_diam4(sh)
        assert verify(t.graph, c).is_vdec, sh
        assert c.color_count == predict_chi_s(t).value, sh
        assert max(Counter(c.assignment.values()).values()) <= 2, sh
        seen += 1
    assert seen > 100


def test_color_tree_examples():
    with pytest.raises(HypothesisViolated):
        color_tree(as_tree(path(6)))
    q130 = shape_builder(DiamFour(1, 3))
    assert (q130.n1, q130.n2) == (4, 3)
    c = color_tree(q130)
    assert c.color_count == 4 == exact_chi_s(q130.graph).chi
    cat = tree_from_edges(8, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (1, 6), (4, 7)])
    assert (cat.diameter, cat.n1, cat.n2) == (5, 4, 2)
    c = color_tree(cat)
    assert verify(cat.graph, c).is_vdec and c.color_count == 4 == exact_chi_s(cat.graph).chi


def test_color_tree_all_hypothesis_trees_to_12():
    case31 = 0
    for t in hypothesis_trees(3, 12):
        tr = ColoringTrace()
        c = color_tree(t, tr)
        r = verify(t.graph, c)
        assert r.is_vdec and c.color_count == predict_chi_s(t).value
        case31 += tr.case31_hits
    assert case31 == 0


def test_trace_records_steps(tmp_path):
    rng = random.Random(5)
    while True:
        t = random_tree(30, rng)
        if t.n2 <= t.n1 and t.diameter >= 6:
            break
    tr = ColoringTrace()
    color_tree(t, tr)
    assert tr.steps and sum(tr.lifts.values()) == len(tr.steps)
    out = tmp_path / "trace.jsonl"
    tr.write_jsonl(out)
    recs = [json.loads(line) for line in out.read_text().splitlines()]
    assert len(recs) == len(tr.steps)
    assert {"kind", "case", "removed", "added", "extension_recipe", "lift"} <= set(recs[0])
    for s in tr.steps:
        assert s.child_p < 30 or s is not tr.steps[0]


@settings(max_examples=40, deadline=None)
@given(random_trees(3, 60))
def test_color_tree_random(t):
    if t.n2 > t.n1 and t.diameter >= 5:
        return
    c = color_tree(t)
    assert verify(t.graph, c).is_vdec and c.color_count == predict_chi_s(t).value


def test_balancing_vertex_examples():
    assert find_balancing_vertex(as_tree(path(5))) == 1
    assert find_balancing_vertex(as_tree(path(4))) == 1
    spider = shape_builder(DiamFour(0, 3))
    x = find_balancing_vertex(spider)
    assert x == 1 and spider.graph.degree(x) == 2
    with pytest.raises(HypothesisViolated):
        find_balancing_vertex(as_tree(star(3)))


def test_balancing_vertex_lemma_to_12():
    for n in range(3, 13):
        for t in trees_of(n):
            if t.n2 < t.n1:
                continue
            x = find_balancing_vertex(t)
            g = t.graph
            assert g.degree(x) == 2 and any(g.degree(w) <= 2 for w in g.adj[x])


def test_equitable_examples():
    s33 = shape_builder(DoubleStar(2, 2))
    c = color_double_star(2, 2)
    assert equitable_finish(s33, c) is c
    spider = shape_builder(DiamFour(0, 3))
    c = color_diam4(DiamFour(0, 3))
    assert sorted(c.class_sizes()) == [2, 2, 2] and equitable_finish(spider, c) is c
    with pytest.raises(HypothesisViolated):
        equitable_finish(as_tree(path(9)), color_tree(as_tree(path(5))))


def test_equitable_rebalances_unbalanced_outputs():
    fixed = 0
    for t in hypothesis_trees(5, 12):
        if t.q > 2 * (t.n1 + 1):
            continue
        c = color_tree(t)
        e = equitable_finish(t, c)
        r = verify(t.graph, e)
        assert r.is_vdec and r.equitable and e.palette == c.palette
        fixed += not verify(t.graph, c).equitable
    assert fixed > 0
