"""Exact vdec chromatic numbers by exhaustive backtracking.

The search colors edges in a fixed order (descending endpoint-degree sum,
ties by index) and prunes on

* a color already present at an endpoint,
* a completed vertex whose color set equals another completed vertex's,
* color symmetry: color ``j + 1`` is tried only once ``j`` has been used,
* in equitable mode, class sizes that can no longer end within one of each other.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import BudgetExceeded, IndistinguishableByStructure, Infeasible, StructurallyUncolorable
from .graph_core import Edge, SimpleGraph, degree_profile, edge
from .verifier import EdgeColoring, check_structure, conjecture_lower_bound

DEFAULT_NODE_BUDGET = 10**8


@dataclass(frozen=True)
class SolverConfig:
    max_palette: int | None = None  # None: q colors, always enough
    equitable: bool = False
    node_budget: int = DEFAULT_NODE_BUDGET
    symmetry: bool = True


@dataclass(frozen=True)
class ExactResult:
    chi: int
    witness: EdgeColoring
    nodes_explored: int


def edge_order(g: SimpleGraph) -> list[int]:
    degs = g.degrees()
    return sorted(range(g.q), key=lambda i: (-(degs[g.edges[i][0]] + degs[g.edges[i][1]]), i))


class _Search:
    """One feasibility question: is there a k-vdec extending ``fixed``?"""

    def __init__(self, g: SimpleGraph, k: int, *, equitable: bool, symmetry: bool,
                 budget: int, fixed: Mapping[Edge, int] | None = None):
        self.g = g
        self.k = k
        self.equitable = equitable
        self.budget = budget
        self.nodes = 0
        self.fixed = dict(fixed or {})
        self.symmetry = symmetry and not self.fixed
        free = [i for i in edge_order(g) if g.edges[i] not in self.fixed]
        self.free = free
        q = g.q
        self.cap = -(-q // k) if k else 0
        self.floor = q // k if k else 0

    def run(self) -> dict[Edge, int] | None:
        g, k = self.g, self.k
        p = g.p
        self.used = [0] * p
        self.remaining = [len(a) for a in g.adj]
        self.completed: set[int] = set()
        self.count = [0] * (k + 1)
        self.deficit = self.floor * k
        self.colors: dict[Edge, int] = {}
        for e, c in self.fixed.items():
            if not 1 <= c <= k or not self._place(e, c):
                return None
        if self.equitable and self.deficit > len(self.free):
            return None
        top = max(self.fixed.values(), default=0)
        if self._dfs(0, top):
            return dict(self.colors)
        return None

    def _place(self, e: Edge, c: int) -> bool:
        """Assign c to e; on failure leave state untouched."""
        u, v = e
        bit = 1 << c
        if self.used[u] & bit or self.used[v] & bit:
            return False
        if self.equitable and self.count[c] >= self.cap:
            return False
        self.used[u] |= bit
        self.used[v] |= bit
        self.remaining[u] -= 1
        self.remaining[v] -= 1
        done = []
        ok = True
        for w in (u, v) if u != v else (u,):
            if self.remaining[w] == 0:
                if self.used[w] in self.completed:
                    ok = False
                    break
                self.completed.add(self.used[w])
                done.append(w)
        if not ok:
            for w in done:
                self.completed.discard(self.used[w])
            self.used[u] &= ~bit
            self.used[v] &= ~bit
            self.remaining[u] += 1
            self.remaining[v] += 1
            return False
        if self.count[c] < self.floor:
            self.deficit -= 1
        self.count[c] += 1
        self.colors[e] = c
        return True

    def _unplace(self, e: Edge, c: int) -> None:
        u, v = e
        for w in (u, v):
            if self.remaining[w] == 0:
                self.completed.discard(self.used[w])
        bit = 1 << c
        self.used[u] &= ~bit
        self.used[v] &= ~bit
        self.remaining[u] += 1
        self.remaining[v] += 1
        self.count[c] -= 1
        if self.count[c] < self.floor:
            self.deficit += 1
        del self.colors[e]

    def _dfs(self, idx: int, top: int) -> bool:
        if idx == len(self.free):
            return True
        e = self.g.edges[self.free[idx]]
        limit = min(self.k, top + 1) if self.symmetry else self.k
        left = len(self.free) - idx - 1
        for c in range(1, limit + 1):
            self.nodes += 1
            if self.nodes > self.budget:
                raise BudgetExceeded(f"node budget {self.budget} exhausted at k={self.k}")
            if not self._place(e, c):
                continue
            if not (self.equitable and self.deficit > left):
                if self._dfs(idx + 1, max(top, c)):
                    return True
            self._unplace(e, c)
        return False


def _precheck(g: SimpleGraph) -> None:
    try:
        check_structure(g)
    except IndistinguishableByStructure as exc:
        raise StructurallyUncolorable(str(exc)) from None


def find_vdec(g: SimpleGraph, k: int, *, equitable: bool = False, symmetry: bool = True,
              fixed: Mapping[Edge, int] | None = None,
              budget: int = DEFAULT_NODE_BUDGET) -> tuple[EdgeColoring | None, int]:
    """Search for a k-vdec (extending ``fixed``); returns (coloring or None, nodes)."""
    _precheck(g)
    if k < 1:
        return (EdgeColoring({}, 0) if g.q == 0 else None), 0
    s = _Search(g, k, equitable=equitable, symmetry=symmetry, budget=budget,
                fixed={edge(*e): c for e, c in (fixed or {}).items()})
    found = s.run()
    return (EdgeColoring(found, k) if found is not None else None), s.nodes


def _solve(g: SimpleGraph, cfg: SolverConfig) -> ExactResult:
    _precheck(g)
    if g.q == 0:
        return ExactResult(0, EdgeColoring({}, 0), 0)
    cap = cfg.max_palette if cfg.max_palette is not None else g.q
    nodes = 0
    k = conjecture_lower_bound(degree_profile(g))
    while k <= cap:
        remaining = cfg.node_budget - nodes
        found, used = find_vdec(g, k, equitable=cfg.equitable, symmetry=cfg.symmetry, budget=remaining)
        nodes += used
        if found is not None:
            break
        k += 1
    else:
        raise Infeasible(f"no vdec with at most {cap} colors")
    # certify by exhausting k - 1 (and walk down should it unexpectedly succeed)
    while k > 1:
        lower, used = find_vdec(g, k - 1, equitable=cfg.equitable, symmetry=cfg.symmetry,
                                budget=cfg.node_budget - nodes)
        nodes += used
        if lower is None:
            break
        k, found = k - 1, lower
    return ExactResult(k, found, nodes)


def exact_chi_s(g: SimpleGraph, cfg: SolverConfig | None = None) -> ExactResult:
    cfg = cfg or SolverConfig()
    if cfg.equitable:
        cfg = SolverConfig(cfg.max_palette, False, cfg.node_budget, cfg.symmetry)
    return _solve(g, cfg)


def exact_chi_es(g: SimpleGraph, cfg: SolverConfig | None = None) -> ExactResult:
    cfg = cfg or SolverConfig()
    return _solve(g, SolverConfig(cfg.max_palette, True, cfg.node_budget, cfg.symmetry))


def count_vdecs(g: SimpleGraph, k: int, budget: int = DEFAULT_NODE_BUDGET) -> int:
    """Number of k-vdecs over palette [1..k], no symmetry reduction.

    Deliberately independent of :class:`_Search`: only properness is pruned,
    distinctness is checked on complete assignments.
    """
    _precheck(g)
    edges = g.edges
    q = len(edges)
    colors = [0] * q
    inc = [[i for i, e in enumerate(edges) if u in e] for u in range(g.p)]
    nodes = 0
    total = 0

    def distinct() -> bool:
        sets = {frozenset(colors[i] for i in inc[u]) for u in range(g.p)}
        return len(sets) == g.p

    def rec(i: int) -> None:
        nonlocal nodes, total
        if i == q:
            total += distinct()
            return
        u, v = edges[i]
        for c in range(1, k + 1):
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"count_vdecs budget {budget} exhausted")
            if any(colors[j] == c for j in inc[u] + inc[v] if j < i):
                continue
            colors[i] = c
            rec(i + 1)
        colors[i] = 0

    rec(0)
    return total


def naive_chi_s(g: SimpleGraph, budget: int = DEFAULT_NODE_BUDGET) -> int:
    """Smallest k with count_vdecs(g, k) > 0, starting from 1."""
    _precheck(g)
    if g.q == 0:
        return 0
    k = 1
    while count_vdecs(g, k, budget) == 0:
        k += 1
    return k
