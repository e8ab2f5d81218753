"""Inductive vdec construction for trees of diameter at least five.

Each call picks the first applicable reduction (Cases 1.1, 1.2, 2.1, 2.2,
2.3, 3.2), colors the strictly smaller reduced tree recursively with
``n1(child)`` colors, and lifts that coloring back with ``n1`` colors.

A lift is attempted in this order:

1. the explicit extension rule of the case (``recipe``), then its symmetric
   variants (``variant-i``: the other orientation of a suppressed vertex,
   the other branch of a conditional rule);
2. ``local``: exhaustive completion over only the edges the step touches,
   all other colors kept from the child;
3. ``exact``: a fresh search for an n1-vdec of the whole tree.

When the reduced tree is not colorable with exactly ``n1(child)`` colors
(it is a double star or an exceptional diameter-4 shape) the step is
answered by ``base-exact`` directly.  Steps 2 and 3 never fire silently:
every lift method is recorded in the trace and in the counters.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable

from ..errors import HypothesisViolated, InternalCaseExhaustion, NotFound
from ..exact_solver import DEFAULT_NODE_BUDGET, find_vdec
from ..graph_core import Edge, Tree, edge
from ..verifier import EdgeColoring, verify
from . import _adj
from ._adj import Adj
from .closed_forms import closed_form_adj, roles_from_adj
from .predict import ChiPrediction, predict_chi_s, predict_from_stats

Recipe = Callable[[dict[Edge, int]], dict[Edge, int]]


@dataclass
class ReductionStep:
    kind: str
    case: str
    roles: dict[str, int]
    removed: list[int]
    added: list[Edge]
    touched: list[Edge]
    extension_recipe: str
    child_p: int = 0
    child_n1: int = 0
    lift: str = ""

    def to_json(self) -> str:
        d = asdict(self)
        d["added"] = [list(e) for e in self.added]
        d["touched"] = [list(e) for e in self.touched]
        return json.dumps(d, sort_keys=True)


@dataclass
class ColoringTrace:
    steps: list[ReductionStep] = field(default_factory=list)
    lifts: Counter = field(default_factory=Counter)
    cases: Counter = field(default_factory=Counter)
    case31_hits: int = 0

    def write_jsonl(self, path) -> None:
        with open(path, "w") as fh:
            for s in self.steps:
                fh.write(s.to_json() + "\n")

    @property
    def fallbacks(self) -> int:
        return sum(v for k, v in self.lifts.items() if k in ("local", "exact", "base-exact"))


@dataclass
class _Plan:
    step: ReductionStep
    child: Adj
    recipes: list[Recipe]


# -- balancing vertex ---------------------------------------------------------


def balancing_vertex(adj: Adj) -> int | None:
    """Smallest 2-degree vertex with a neighbor of degree at most 2."""
    for x in sorted(adj):
        if len(adj[x]) == 2 and any(len(adj[w]) <= 2 for w in adj[x]):
            return x
    return None


def find_balancing_vertex(t: Tree) -> int:
    if t.n2 < t.n1:
        raise HypothesisViolated(f"needs n2 >= n1, got n2={t.n2}, n1={t.n1}")
    x = balancing_vertex(_adj.from_tree(t))
    if x is None:
        raise NotFound("no 2-degree vertex with a leaf or 2-degree neighbor")
    return x


# -- reduction planning ---------------------------------------------------------


def _predicted_adj(adj: Adj) -> int | None:
    """Prediction for a reduced tree, or None when no prediction applies."""
    if len(adj) < 3:
        return None
    D = _adj.diameter(adj)
    n1, n2 = _adj.degree_count(adj, 1), _adj.degree_count(adj, 2)
    shape = roles_from_adj(adj).shape() if D == 4 else None
    try:
        return predict_from_stats(n1, n2, D, shape).value
    except HypothesisViolated:
        return None


def _plan_case1(adj: Adj, k: int) -> _Plan | None:
    for v in _adj.leaves(adj):
        (u,) = adj[v]
        if len(adj[u]) >= 4:
            break
    else:
        return None
    child = _adj.copy(adj)
    _adj.remove(child, v)
    uv = edge(u, v)
    if _adj.degree_count(child, 2) <= _adj.degree_count(child, 1):
        step = ReductionStep("DropLeafHighDeg", "1.1", {"u": u, "v": v}, [v], [], [uv], "uv=b'+1")
        return _Plan(step, child, [lambda xi: {uv: k}])

    x = balancing_vertex(child)
    if x is None:
        raise InternalCaseExhaustion("Case 1.2: no balancing vertex in T - v")
    nbrs = sorted(child[x], key=lambda w: (len(child[w]) != 2, len(child[w]) > 2, w))
    x1, x2 = nbrs
    _adj.suppress(child, x)
    xx1, xx2, x12 = edge(x, x1), edge(x, x2), edge(x1, x2)
    step = ReductionStep(
        "SuppressDegree2", "1.2", {"u": u, "v": v, "x": x, "x1": x1, "x2": x2},
        [v, x], [x12], [uv, xx1, xx2], "uv=b1+1, xx1=b1+1, xx2=xi(x1x2)",
    )
    recipes = [
        lambda xi: {uv: k, xx1: k, xx2: xi[x12]},
        lambda xi: {uv: k, xx2: k, xx1: xi[x12]},
    ]
    return _Plan(step, child, recipes)


def _twins(adj: Adj) -> list[int]:
    return [u for u in sorted(adj)
            if len(adj[u]) == 3 and sum(len(adj[w]) == 1 for w in adj[u]) >= 2]


def _plan_case21(adj: Adj, k: int, u: int, x: int) -> _Plan:
    v, vp = sorted(w for w in adj[u] if len(adj[w]) == 1)[:2]
    (up,) = adj[u] - {v, vp}
    x1 = min(w for w in adj[x] if len(adj[w]) == 1)
    (x2,) = adj[x] - {x1}
    child = _adj.copy(adj)
    _adj.remove(child, v, vp)
    _adj.suppress(child, x)
    uup, uv, uvp = edge(u, up), edge(u, v), edge(u, vp)
    xx1, xx2, x12 = edge(x, x1), edge(x, x2), edge(x1, x2)
    new = k

    def outside(xi):  # xi(x1x2) not in C(u')
        a, c = xi[uup], xi[x12]
        return {uup: new, uvp: a, uv: c, xx2: c, xx1: new}

    def inside(xi):  # xi(x1x2) in C(u')
        a, c = xi[uup], xi[x12]
        return {uup: a, uv: c, uvp: new, xx2: new, xx1: a}

    def primary(xi):
        c_up = _adj.color_set(child, xi, up)
        return (inside if xi[x12] in c_up else outside)(xi)

    def secondary(xi):
        c_up = _adj.color_set(child, xi, up)
        return (outside if xi[x12] in c_up else inside)(xi)

    step = ReductionStep(
        "TwinLeavesPlusDegree2", "2.1",
        {"u": u, "v": v, "v'": vp, "u'": up, "x": x, "x1": x1, "x2": x2},
        [v, vp, x], [x12], [uup, uv, uvp, xx1, xx2],
        "c=xi(x1x2) not in C(u'): uu'=b1+1, uv'=xi(uu'), uv=c, xx2=c, xx1=b1+1; "
        "else uu'=xi(uu'), uv=c, uv'=b1+1, xx2=b1+1, xx1=xi(uu')",
    )
    return _Plan(step, child, [primary, secondary])


def _suppression_choice(adj: Adj, s: int, avoid: set[int]) -> list[int]:
    deg2 = [x for x in sorted(adj) if len(adj[x]) == 2]
    if s == 0:
        return []
    if s == 1:
        pref = [x for x in deg2 if not (adj[x] & avoid)]
        return [(pref or deg2)[0]]
    pairs = [(x, y) for i, x in enumerate(deg2) for y in deg2[i + 1:] if y not in adj[x]]
    pref = [pq for pq in pairs if not ((adj[pq[0]] | adj[pq[1]]) & avoid)]
    chosen = (pref or pairs)
    if not chosen:
        raise InternalCaseExhaustion("Case 2.2: no two non-adjacent 2-degree vertices")
    return list(chosen[0])


def _plan_case22(adj: Adj, k: int, u: int) -> _Plan:
    v, vp = sorted(w for w in adj[u] if len(adj[w]) == 1)[:2]
    (up,) = adj[u] - {v, vp}
    path = _adj.diameter_path(adj)
    if path[1] == u:
        path = path[::-1]
    p1, p2, p3 = path[0], path[1], path[2]
    p2_leaves = sorted(w for w in adj[p2] if len(adj[w]) == 1)
    if len(adj[p2]) != 3 or len(p2_leaves) != 2:
        raise InternalCaseExhaustion(f"Case 2.2: end vertex {p2} is not a 3-degree twin-leaf vertex")
    p1p = next(w for w in p2_leaves if w != p1)

    n1, n2 = _adj.degree_count(adj, 1), _adj.degree_count(adj, 2)
    s = max(0, n2 - (n1 - 2))
    chosen = _suppression_choice(adj, s, {u, p2})

    child = _adj.copy(adj)
    _adj.remove(child, v, vp, p1, p1p)
    ends = []
    for x in chosen:
        a, b = sorted(child[x])
        _adj.suppress(child, x)
        ends.append((x, a, b))

    b2 = k - 2
    uup, uv, uvp = edge(u, up), edge(u, v), edge(u, vp)
    p23, p21, p21p = edge(p2, p3), edge(p2, p1), edge(p2, p1p)
    touched = [uup, uv, uvp, p23, p21, p21p]
    for x, a, b in ends:
        touched += [edge(x, a), edge(x, b)]

    def core(xi):
        return {uup: b2 + 2, uvp: xi[uup], uv: b2 + 1,
                p23: b2 + 1, p21p: xi[p23], p21: b2 + 2}

    def make(new_colors, flips):
        def recipe(xi):
            out = core(xi)
            for (x, a, b), c, flip in zip(ends, new_colors, flips):
                x1, x2 = (b, a) if flip else (a, b)
                out[edge(x, x2)] = xi[edge(x1, x2)]
                out[edge(x, x1)] = c
            return out
        return recipe

    recipes = []
    if s == 2:
        for flips in ((0, 0), (1, 0), (0, 1), (1, 1)):
            recipes.append(make((b2 + 1, b2 + 2), flips))
    elif s == 1:
        for c in (b2 + 1, b2 + 2):
            for flip in (0, 1):
                recipes.append(make((c,), (flip,)))
    else:
        recipes.append(make((), ()))

    roles = {"u": u, "v": v, "v'": vp, "u'": up, "p1": p1, "p1'": p1p, "p2": p2, "p3": p3}
    for name, (x, a, b) in zip(("x", "y"), ends):
        roles.update({name: x, name + "1": a, name + "2": b})
    step = ReductionStep(
        "DoubleEndReduction", "2.2", roles,
        [v, vp, p1, p1p] + chosen, [edge(a, b) for _, a, b in ends], touched,
        "uu'=b2+2, uv'=xi(uu'), uv=b2+1, xx2=xi(x1x2), xx1=b2+1; "
        "p2p3=b2+1, p2p1'=xi(p2p3), p2p1=b2+2, yy2=xi(y1y2), yy1=b2+2",
    )
    return _Plan(step, child, recipes)


def _plan_case23(adj: Adj, k: int) -> _Plan:
    path = _adj.diameter_path(adj)
    ends = [(path[0], path[1], path[2]), (path[-1], path[-2], path[-3])]
    for u in sorted(adj):
        if len(adj[u]) != 3:
            continue
        lv = [w for w in adj[u] if len(adj[w]) == 1]
        if len(lv) != 1:
            continue
        v = lv[0]
        for x1, x2, x3 in ends:
            if len(adj[x2]) != 2:
                raise InternalCaseExhaustion(f"Case 2.3: path end neighbor {x2} has degree {len(adj[x2])}")
            if x2 in adj[u] or x3 == u:
                continue
            return _build_case23(adj, k, u, v, x1, x2, x3)
    raise InternalCaseExhaustion("Case 2.3: no compatible leaf and path end")


def _build_case23(adj: Adj, k: int, u: int, v: int, x1: int, x2: int, x3: int) -> _Plan:
    vp, up = sorted(adj[u] - {v})
    child = _adj.copy(adj)
    _adj.remove(child, v, u)
    _adj.join(child, vp, up)
    _adj.suppress(child, x2)
    uup, uvp, uv = edge(u, up), edge(u, vp), edge(u, v)
    x21, x23, x13, vup = edge(x2, x1), edge(x2, x3), edge(x1, x3), edge(vp, up)
    new = k

    def lift_at(anchor_edge):
        other = uvp if anchor_edge == uup else uup

        def recipe(xi):
            c = xi[x13]
            return {anchor_edge: new, other: xi[vup], uv: c, x23: c, x21: new}
        return recipe

    def ordered(xi, which):
        c = xi[x13]
        first = uup if c not in _adj.color_set(child, xi, up) else uvp
        second = uvp if first == uup else uup
        return lift_at(first if which == 0 else second)(xi)

    step = ReductionStep(
        "LeafPlusPath2", "2.3",
        {"u": u, "v": v, "v'": vp, "u'": up, "x1": x1, "x2": x2, "x3": x3},
        [v, u, x2], [x13, vup], [uup, uvp, uv, x21, x23],
        "uu'=b3+1 if xi(x1x3) not in C(u'), uv'=xi(u'v'), uv=xi(x1x3), x2x3=xi(x1x3), x2x1=b3+1",
    )
    return _Plan(step, child, [lambda xi: ordered(xi, 0), lambda xi: ordered(xi, 1)])


def _is_case31(adj: Adj) -> bool:
    deg2 = [x for x in adj if len(adj[x]) == 2]
    for x in deg2:
        ds = sorted(len(adj[w]) for w in adj[x])
        if ds[0] != 1 or ds[1] < 3:
            return False
    seen: set[int] = set()
    for x in deg2:
        for w in adj[x]:
            if len(adj[w]) > 1:
                if w in seen:
                    return False
                seen.add(w)
    return True


def _plan_case32(adj: Adj, k: int) -> _Plan:
    def pendant_mid(y, u):
        if len(adj[y]) != 2:
            return False
        (z,) = adj[y] - {u}
        return len(adj[z]) == 1

    for u in sorted(adj):
        mids = sorted(y for y in adj[u] if pendant_mid(y, u))
        others = adj[u] - set(mids)
        if len(mids) >= 2 and len(others) == 1:
            (w,) = others
            if len(adj[w]) >= 2:
                break
    else:
        raise InternalCaseExhaustion("Case 3.2: no broom vertex found")
    m = len(mids)
    tips = [next(iter(adj[y] - {u})) for y in mids]
    child = _adj.copy(adj)
    _adj.remove(child, *mids, *tips)
    b1 = k - m + 1
    wu = edge(w, u)
    uy = [edge(u, y) for y in mids]
    yx = [edge(y, x) for y, x in zip(mids, tips)]

    def recipe(xi):
        a = xi[wu]
        spare = min(c for c in range(1, b1 + 1) if c != a)
        out = {uy[i - 1]: b1 + i for i in range(1, m)}
        out[uy[m - 1]] = spare
        out[yx[0]] = a
        out.update({yx[j - 1]: b1 + j - 1 for j in range(2, m + 1)})
        return out

    roles = {"u": u, "w": w, **{f"y{i}": y for i, y in enumerate(mids, 1)},
             **{f"x{i}": x for i, x in enumerate(tips, 1)}}
    step = ReductionStep(
        "BroomDetach", "3.2", roles, mids + tips, [], uy + yx,
        "uy_i=b1+i (i<m), uy_m in S-{xi(wu)}, y1x1=xi(wu), y_jx_j=b1+j-1 (j>=2)",
    )
    return _Plan(step, child, [recipe])


def _plan(adj: Adj, k: int, trace: ColoringTrace) -> _Plan:
    plan = _plan_case1(adj, k)
    if plan is not None:
        return plan
    if any(len(adj[next(iter(adj[v]))]) == 3 for v in _adj.leaves(adj)):
        twins = _twins(adj)
        deg2leaf = [x for x in sorted(adj)
                    if len(adj[x]) == 2 and any(len(adj[w]) == 1 for w in adj[x])]
        if twins and deg2leaf:
            return _plan_case21(adj, k, twins[0], deg2leaf[0])
        if twins:
            return _plan_case22(adj, k, twins[0])
        return _plan_case23(adj, k)
    if _is_case31(adj):
        trace.case31_hits += 1
        raise InternalCaseExhaustion("Case 3.1 configuration reached")
    return _plan_case32(adj, k)


# -- recursion ---------------------------------------------------------------------


class _Colorer:
    def __init__(self, trace: ColoringTrace, budget: int):
        self.trace = trace
        self.budget = budget
        self.base_cache: dict[tuple, dict[Edge, int]] = {}

    def exact(self, adj: Adj, k: int, fixed: dict[Edge, int] | None = None) -> dict[Edge, int] | None:
        g, labels = _adj.to_graph(adj)
        index = {u: i for i, u in enumerate(labels)}
        fx = None
        if fixed is not None:
            fx = {edge(index[a], index[b]): c for (a, b), c in fixed.items()}
        found, _ = find_vdec(g, k, fixed=fx, budget=self.budget)
        if found is None:
            return None
        return {edge(labels[a], labels[b]): c for (a, b), c in found.assignment.items()}

    def base_exact(self, adj: Adj, k: int) -> dict[Edge, int]:
        g, labels = _adj.to_graph(adj)
        key = (g.edges, k)
        if key not in self.base_cache:
            found = self.exact(adj, k)
            if found is None:
                raise InternalCaseExhaustion(f"no {k}-vdec of a reduced base tree on {len(adj)} vertices")
            index = {u: i for i, u in enumerate(labels)}
            self.base_cache[key] = {edge(index[a], index[b]): c for (a, b), c in found.items()}
        return {edge(labels[a], labels[b]): c for (a, b), c in self.base_cache[key].items()}

    def color(self, adj: Adj) -> dict[Edge, int]:
        if _adj.diameter(adj) <= 4:
            return closed_form_adj(adj)
        k = _adj.degree_count(adj, 1)
        plan = _plan(adj, k, self.trace)
        step = plan.step
        step.child_p = len(plan.child)
        step.child_n1 = _adj.degree_count(plan.child, 1)
        self.trace.steps.append(step)
        self.trace.cases[step.case] += 1

        if _predicted_adj(plan.child) != step.child_n1:
            step.lift = "base-exact"
            self.trace.lifts[step.lift] += 1
            return self.base_exact(adj, k)

        xi = self.color(plan.child)
        touched = set(step.touched)
        keep = {e: xi[e] for e in _adj.edges(adj) if e not in touched}
        for i, recipe in enumerate(plan.recipes):
            try:
                colors = {**keep, **recipe(xi)}
            except KeyError:
                continue
            if _adj.is_vdec(adj, colors, k):
                step.lift = "recipe" if i == 0 else f"variant-{i}"
                self.trace.lifts[step.lift] += 1
                return colors
        colors = self.exact(adj, k, fixed=keep)
        step.lift = "local"
        if colors is None:
            colors = self.exact(adj, k)
            step.lift = "exact"
        if colors is None:
            raise InternalCaseExhaustion(f"no {k}-vdec found for a tree on {len(adj)} vertices")
        self.trace.lifts[step.lift] += 1
        return colors


def color_tree(t: Tree, trace: ColoringTrace | None = None,
               budget: int = DEFAULT_NODE_BUDGET) -> EdgeColoring:
    """A vdec of ``t`` with exactly ``predict_chi_s(t).value`` colors."""
    pred: ChiPrediction = predict_chi_s(t)
    trace = trace if trace is not None else ColoringTrace()
    colors = _Colorer(trace, budget).color(_adj.from_tree(t))
    coloring = EdgeColoring(colors, pred.value)
    report = verify(t.graph, coloring)
    if not report.is_vdec or coloring.color_count != pred.value:
        raise InternalCaseExhaustion(f"constructed coloring failed verification: {report.violation}")
    return coloring


def lift_summary(traces: Iterable[ColoringTrace]) -> Counter:
    total: Counter = Counter()
    for tr in traces:
        total.update(tr.lifts)
    return total
