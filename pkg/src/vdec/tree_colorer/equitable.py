"""Rebalance a tree vdec so color classes differ in size by at most one."""
from __future__ import annotations

from collections import Counter

from ..errors import HypothesisViolated, RebalanceFailed
from ..graph_core import Edge, Tree, edge
from ..verifier import EdgeColoring, verify


class _State:
    def __init__(self, t: Tree, colors: dict[Edge, int], k: int):
        self.adj = t.graph.adj
        self.colors = dict(colors)
        self.k = k
        self.sets = [frozenset(colors[edge(u, w)] for w in self.adj[u]) for u in range(t.p)]
        self.owners = Counter(self.sets)
        self.sizes = Counter(colors.values())

    def spread(self) -> int:
        s = [self.sizes.get(i, 0) for i in range(1, self.k + 1)]
        return max(s) - min(s)

    def try_recolor(self, e: Edge, new: int) -> bool:
        """Recolor e to ``new`` if the result is still a vdec."""
        old = self.colors[e]
        u, v = e
        su, sv = self.sets[u], self.sets[v]
        if new in su or new in sv:
            return False
        nu, nv = (su - {old}) | {new}, (sv - {old}) | {new}
        if nu == nv:
            return False
        for s in (nu, nv):
            # a clash only counts against vertices other than u and v
            if self.owners.get(s, 0) - (s == su) - (s == sv) > 0:
                return False
        for s in (su, sv):
            self.owners[s] -= 1
        for s in (nu, nv):
            self.owners[s] += 1
        self.sets[u], self.sets[v] = nu, nv
        self.colors[e] = new
        self.sizes[old] -= 1
        self.sizes[new] += 1
        return True


def equitable_finish(t: Tree, c: EdgeColoring, budget: int | None = None) -> EdgeColoring:
    """Move edges out of the largest classes into the smallest ones, keeping a vdec.

    Only single-edge recolorings that strictly reduce the sum of squared class
    sizes are used, so the search terminates; at most ``budget`` (default q^2)
    candidate moves are tried.
    """
    if t.q > 2 * (t.n1 + 1):
        raise HypothesisViolated(f"q={t.q} exceeds 2(n1+1)={2 * (t.n1 + 1)}")
    report = verify(t.graph, c)
    if not report.is_vdec:
        raise ValueError(f"input is not a vdec: {report.violation}")
    if report.equitable:
        return c
    k = c.palette
    st = _State(t, dict(c.assignment), k)
    budget = t.q * t.q if budget is None else budget
    attempts = 0
    while st.spread() > 1:
        moved = False
        by_size = sorted(range(1, k + 1), key=lambda i: (st.sizes.get(i, 0), i))
        for e in sorted(st.colors, key=lambda e: (-st.sizes[st.colors[e]], e)):
            src = st.sizes[st.colors[e]]
            for new in by_size:
                if st.sizes.get(new, 0) > src - 2:
                    break
                attempts += 1
                if attempts > budget:
                    raise RebalanceFailed(f"no balancing move within {budget} attempts")
                if st.try_recolor(e, new):
                    moved = True
                    break
            if moved:
                break
        if not moved:
            raise RebalanceFailed(f"stuck with class sizes {sorted(st.sizes.values())}")
    return EdgeColoring(st.colors, k)
