import random
from functools import lru_cache

from hypothesis import strategies as st

from vdec.conjecture_lab.enumeration import enumerate_trees, prufer_decode
from vdec.graph_core import build_graph, tree_from_edges


def path(p):
    return build_graph(p, [(i, i + 1) for i in range(p - 1)])


def star(leaves):
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


@lru_cache(maxsize=None)
def trees_of(n):
    return tuple(enumerate_trees(n))


def hypothesis_trees(lo, hi):
    for n in range(lo, hi + 1):
        for t in trees_of(n):
            if t.n2 <= t.n1:
                yield t


@st.composite
def random_trees(draw, min_p=3, max_p=14):
    p = draw(st.integers(min_p, max_p))
    seq = draw(st.lists(st.integers(0, p - 1), min_size=p - 2, max_size=p - 2))
    return tree_from_edges(p, prufer_decode(seq, p))


@st.composite
def random_connected_graphs(draw, min_p=3, max_p=7, extra=4):
    t = draw(random_trees(min_p, max_p))
    p = t.p
    non = [(u, v) for u in range(p) for v in range(u + 1, p) if (u, v) not in set(t.edges())]
    chosen = draw(st.lists(st.sampled_from(non), unique=True, max_size=extra)) if non else []
    return build_graph(p, list(t.edges()) + chosen)


def random_tree(p, rng: random.Random):
    return tree_from_edges(p, prufer_decode([rng.randrange(p) for _ in range(p - 2)], p))
