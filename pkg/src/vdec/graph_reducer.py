"""Upper bounds on the vdec chromatic number of a graph through one of its spanning trees.

Two bounds are computed:

* the split bound: cut every non-tree edge uv and hang a new leaf on u and
  on v; the bound is the leaf count of the resulting tree (raised to the
  tree's own predicted value when that is larger),
* the composed bound: a vdec of the spanning tree plus a disjoint palette
  properly coloring the remaining edges.
"""
from __future__ import annotations

from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import IsTree, NotConnected, NotSpanningTree
from .exact_solver import DEFAULT_NODE_BUDGET, SolverConfig, exact_chi_s
from .graph_core import Edge, SimpleGraph, Tree, build_graph, degree_profile, edge, is_connected, tree_from_edges
from .tree_colorer import color_tree, predict_chi_s
from .verifier import EdgeColoring, verify


def bfs_spanning_tree(g: SimpleGraph, root: int = 0) -> frozenset[Edge]:
    seen = [False] * g.p
    seen[root] = True
    out = []
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if not seen[w]:
                seen[w] = True
                out.append(edge(u, w))
                queue.append(w)
    if len(out) != g.p - 1:
        raise NotConnected(f"graph on {g.p} vertices is not connected")
    return frozenset(out)


def check_spanning(g: SimpleGraph, spanning: Iterable[Edge]) -> frozenset[Edge]:
    span = frozenset(edge(*e) for e in spanning)
    missing = [e for e in span if e not in set(g.edges)]
    if missing:
        raise NotSpanningTree(f"edges not in the graph: {sorted(missing)}")
    if len(span) != g.p - 1 or not is_connected(build_graph(g.p, span)):
        raise NotSpanningTree(f"{len(span)} edges do not form a spanning tree on {g.p} vertices")
    return span


def cotree_edges(g: SimpleGraph, spanning: frozenset[Edge]) -> list[Edge]:
    return [e for e in g.edges if e not in spanning]


def all_spanning_trees(g: SimpleGraph) -> Iterator[frozenset[Edge]]:
    """Every spanning tree, by include/exclude over the edge list with a union-find check."""
    edges = g.edges
    need = g.p - 1

    def find(parent, x):
        while parent[x] != x:
            x = parent[x]
        return x

    def rec(i, chosen, parent):
        if len(chosen) == need:
            yield frozenset(chosen)
            return
        if need - len(chosen) > len(edges) - i:
            return
        u, v = edges[i]
        ru, rv = find(parent, u), find(parent, v)
        if ru != rv:
            merged = list(parent)
            merged[ru] = rv
            chosen.append(edges[i])
            yield from rec(i + 1, chosen, merged)
            chosen.pop()
        yield from rec(i + 1, chosen, parent)

    yield from rec(0, [], list(range(g.p)))


# -- split construction ---------------------------------------------------------------


@dataclass(frozen=True)
class SplitResult:
    tree: Tree
    pendant_pairs: dict[Edge, tuple[Edge, Edge]]
    spanning_tree_edges: frozenset[Edge]
    source: SimpleGraph = field(repr=False)

    def __post_init__(self):
        g, t = self.source, self.tree
        prof = degree_profile(g)
        r = g.q - g.p + 1
        assert t.n1 == 2 * r + prof.n(1), (t.n1, r, prof.n(1))
        assert t.n2 == prof.n(2), (t.n2, prof.n(2))
        assert t.profile.Delta == prof.Delta, (t.profile.Delta, prof.Delta)


def split_nontree_edges(g: SimpleGraph, spanning: Iterable[Edge]) -> SplitResult:
    span = check_spanning(g, spanning)
    edges = list(span)
    pairs = {}
    nxt = g.p
    for u, v in cotree_edges(g, span):
        eu, ev = (u, nxt), (v, nxt + 1)
        nxt += 2
        edges += [eu, ev]
        pairs[(u, v)] = (eu, ev)
    return SplitResult(tree_from_edges(nxt, edges), pairs, span, g)


@dataclass(frozen=True)
class Cor1Bound:
    value: int | None
    formula: int
    raised: bool  # the split tree's own prediction exceeded the formula
    split: SplitResult


def cor1_details(g: SimpleGraph, spanning: Iterable[Edge] | None = None) -> Cor1Bound:
    r = g.q - g.p + 1
    if r <= 0:
        raise IsTree("graph has no cycle")
    span = bfs_spanning_tree(g) if spanning is None else spanning
    split = split_nontree_edges(g, span)
    prof = degree_profile(g)
    formula = 2 * r + prof.n(1)
    if prof.n(2) > formula:
        return Cor1Bound(None, formula, False, split)
    tree_value = predict_chi_s(split.tree).value
    return Cor1Bound(max(formula, tree_value), formula, tree_value > formula, split)


def cor1_bound(g: SimpleGraph, spanning: Iterable[Edge] | None = None) -> int | None:
    return cor1_details(g, spanning).value


@dataclass(frozen=True)
class LiftResult:
    coloring: EdgeColoring | None
    reason: str


def lift_split_coloring(g: SimpleGraph, split: SplitResult, tree_coloring: EdgeColoring) -> LiftResult:
    """Try to read a vdec of g off a vdec of the split tree.

    Works only if both pendants of every pair carry one color; the result is
    verified and never assumed.
    """
    colors = {}
    for e in split.spanning_tree_edges:
        colors[e] = tree_coloring[e]
    for uv, (eu, ev) in split.pendant_pairs.items():
        cu, cv = tree_coloring[edge(*eu)], tree_coloring[edge(*ev)]
        if cu != cv:
            return LiftResult(None, f"pendants of {uv} colored {cu} and {cv}")
        colors[uv] = cu
    c = EdgeColoring.from_dict(colors).relabeled()
    report = verify(g, c)
    if not report.is_vdec:
        return LiftResult(None, f"lifted coloring fails: {report.violation}")
    return LiftResult(c, "ok")


# -- proper coloring of the cotree ----------------------------------------------------


class _FanColoring:
    """Proper edge coloring with at most Delta + 1 colors by fan rotation and cd-path flips."""

    def __init__(self, p: int, edges: list[Edge]):
        self.adj: list[list[int]] = [[] for _ in range(p)]
        for u, v in edges:
            self.adj[u].append(v)
            self.adj[v].append(u)
        self.palette = max((len(a) for a in self.adj), default=0) + 1
        self.at: list[dict[int, int]] = [{} for _ in range(p)]  # vertex -> color -> neighbor

    def color_of(self, u: int, v: int) -> int | None:
        for c, w in self.at[u].items():
            if w == v:
                return c
        return None

    def free(self, u: int, c: int) -> bool:
        return c not in self.at[u]

    def any_free(self, u: int) -> int:
        return next(c for c in range(1, self.palette + 1) if c not in self.at[u])

    def _set(self, u: int, v: int, c: int | None) -> None:
        old = self.color_of(u, v)
        if old is not None:
            del self.at[u][old]
            del self.at[v][old]
        if c is not None:
            assert c not in self.at[u] and c not in self.at[v], (u, v, c)
            self.at[u][c] = v
            self.at[v][c] = u

    def _fan(self, u: int, v: int) -> list[int]:
        fan = [v]
        used = {v}
        while True:
            last = fan[-1]
            step = None
            for w in self.adj[u]:
                if w in used:
                    continue
                c = self.color_of(u, w)
                if c is not None and self.free(last, c):
                    step = w
                    break
            if step is None:
                return fan
            fan.append(step)
            used.add(step)

    def _flip_path(self, u: int, c: int, d: int) -> None:
        # u has c free; walk the path leaving u on d, alternating d, c
        path = []
        x, want = u, d
        while want in self.at[x]:
            y = self.at[x][want]
            path.append((x, y, want))
            x, want = y, (c if want == d else d)
        for x, y, _ in path:
            self._set(x, y, None)
        for x, y, col in path:
            self._set(x, y, c if col == d else d)

    def add(self, u: int, v: int) -> None:
        fan = self._fan(u, v)
        c = self.any_free(u)
        d = self.any_free(fan[-1])
        if c != d:
            self._flip_path(u, c, d)
        # after the flip d is free on u; take the shortest fan prefix ending where d is free
        w = None
        for i, f in enumerate(fan):
            if i > 0:
                prev_ok = self.color_of(u, f) is not None and self.free(fan[i - 1], self.color_of(u, f))
                if not prev_ok:
                    break
            if self.free(f, d):
                w = i
                break
        assert w is not None, "fan prefix with d free not found"
        for i in range(w):
            nxt_color = self.color_of(u, fan[i + 1])
            self._set(u, fan[i + 1], None)
            self._set(u, fan[i], nxt_color)
        self._set(u, fan[w], d)

    def coloring(self) -> dict[Edge, int]:
        out = {}
        for u, cols in enumerate(self.at):
            for c, w in cols.items():
                out[edge(u, w)] = c
        return out


def proper_edge_coloring(p: int, edges: list[Edge]) -> dict[Edge, int]:
    fc = _FanColoring(p, edges)
    for u, v in edges:
        fc.add(u, v)
    return fc.coloring()


def color_cotree(g: SimpleGraph, spanning: Iterable[Edge]) -> EdgeColoring:
    span = check_spanning(g, spanning)
    rest = cotree_edges(g, span)
    if not rest:
        return EdgeColoring({}, 0)
    return EdgeColoring.from_dict(proper_edge_coloring(g.p, rest)).relabeled()


# -- composed bound -------------------------------------------------------------------


@dataclass(frozen=True)
class BoundReport:
    cor1_bound: int | None
    cor2_bound: int
    cotree_colors: int
    tree_chi: int
    tree_chi_source: str  # "tree_colorer" or "exact"
    cor1_raised: bool
    spanning_tree_edges: tuple[Edge, ...]

    def __post_init__(self):
        assert self.cor2_bound == self.tree_chi + self.cotree_colors

    def to_json(self) -> dict:
        return {
            "cor1_bound": self.cor1_bound,
            "cor2_bound": self.cor2_bound,
            "cotree_colors": self.cotree_colors,
            "tree_chi": self.tree_chi,
            "tree_chi_source": self.tree_chi_source,
            "cor1_raised": self.cor1_raised,
            "spanning_tree_edges": [list(e) for e in self.spanning_tree_edges],
        }


def spanning_tree_chi(t: Tree, budget: int = DEFAULT_NODE_BUDGET) -> tuple[int, str]:
    if t.n2 <= t.n1:
        return color_tree(t, budget=budget).color_count, "tree_colorer"
    return exact_chi_s(t.graph, SolverConfig(node_budget=budget)).chi, "exact"


def cor2_bound(g: SimpleGraph, spanning: Iterable[Edge] | None = None,
               budget: int = DEFAULT_NODE_BUDGET) -> BoundReport:
    span = bfs_spanning_tree(g) if spanning is None else check_spanning(g, spanning)
    t = tree_from_edges(g.p, span)
    tree_chi, source = spanning_tree_chi(t, budget)
    cot = color_cotree(g, span)
    c1, raised = None, False
    if g.q > g.p - 1:
        d = cor1_details(g, span)
        c1, raised = d.value, d.raised
    return BoundReport(c1, tree_chi + cot.color_count, cot.color_count, tree_chi,
                       source, raised, tuple(sorted(span)))


def _report_for(args):
    g, span, budget = args
    return cor2_bound(g, span, budget)


def best_bounds(g: SimpleGraph, *, workers: int = 1, budget: int = DEFAULT_NODE_BUDGET,
                limit: int = 10_000) -> tuple[BoundReport, BoundReport]:
    """Reports minimizing the split bound and the composed bound over all spanning trees.

    Intended for small graphs; at most ``limit`` spanning trees are tried.
    """
    trees = []
    for span in all_spanning_trees(g):
        trees.append(span)
        if len(trees) >= limit:
            break
    jobs = [(g, s, budget) for s in trees]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_report_for, jobs))
    else:
        reports = [_report_for(j) for j in jobs]
    big = float("inf")
    best1 = min(reports, key=lambda r: r.cor1_bound if r.cor1_bound is not None else big)
    best2 = min(reports, key=lambda r: r.cor2_bound)
    return best1, best2
