"""Graph and tree representations, degree statistics and shape classification.

Vertices are dense integers ``0..p-1``.  Edges are stored as ordered pairs
``(u, v)`` with ``u < v``; use :func:`edge` to normalize.
"""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    DuplicateEdge,
    HasCycle,
    InvalidShape,
    NotConnected,
    ParseError,
    SelfLoop,
    TooSmall,
    VertexOutOfRange,
)

Edge = tuple[int, int]


def edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SimpleGraph:
    p: int
    edges: tuple[Edge, ...]
    adj: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)

    @property
    def q(self) -> int:
        return len(self.edges)

    def degree(self, u: int) -> int:
        return len(self.adj[u])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def incident(self, u: int) -> list[Edge]:
        return [edge(u, w) for w in self.adj[u]]


def build_graph(p: int, edge_list: Iterable[Sequence[int]]) -> SimpleGraph:
    """Validate ``edge_list`` and return a graph with sorted adjacency."""
    if p < 0:
        raise VertexOutOfRange(f"negative vertex count {p}")
    seen: set[Edge] = set()
    nbrs: list[list[int]] = [[] for _ in range(p)]
    for pair in edge_list:
        u, v = int(pair[0]), int(pair[1])
        if u == v:
            raise SelfLoop((u, v))
        if not (0 <= u < p and 0 <= v < p):
            raise VertexOutOfRange((u, v))
        e = edge(u, v)
        if e in seen:
            raise DuplicateEdge((u, v))
        seen.add(e)
        nbrs[u].append(v)
        nbrs[v].append(u)
    return SimpleGraph(
        p=p,
        edges=tuple(sorted(seen)),
        adj=tuple(tuple(sorted(a)) for a in nbrs),
    )


@dataclass(frozen=True)
class DegreeProfile:
    counts: dict[int, int]
    delta: int
    Delta: int

    def n(self, d: int) -> int:
        return self.counts.get(d, 0)


def degree_profile(g: SimpleGraph) -> DegreeProfile:
    degs = g.degrees()
    if not degs:
        return DegreeProfile(counts={}, delta=0, Delta=0)
    return DegreeProfile(counts=dict(sorted(Counter(degs).items())), delta=min(degs), Delta=max(degs))


def bfs_distances(adj: Sequence[Sequence[int]], src: int) -> list[int]:
    dist = [-1] * len(adj)
    dist[src] = 0
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def is_connected(g: SimpleGraph) -> bool:
    if g.p == 0:
        return True
    return min(bfs_distances(g.adj, 0)) >= 0


def _double_sweep(adj: Sequence[Sequence[int]]) -> int:
    if len(adj) <= 1:
        return 0
    d0 = bfs_distances(adj, 0)
    far = max(range(len(adj)), key=lambda i: d0[i])
    return max(bfs_distances(adj, far))


@dataclass(frozen=True)
class Tree:
    graph: SimpleGraph
    profile: DegreeProfile
    diameter: int

    @property
    def p(self) -> int:
        return self.graph.p

    @property
    def q(self) -> int:
        return self.graph.q

    @property
    def n1(self) -> int:
        return self.profile.n(1)

    @property
    def n2(self) -> int:
        return self.profile.n(2)

    def edges(self) -> tuple[Edge, ...]:
        return self.graph.edges


def as_tree(g: SimpleGraph) -> Tree:
    if not is_connected(g):
        raise NotConnected(f"graph on {g.p} vertices is not connected")
    if g.q != g.p - 1:
        raise HasCycle(f"connected graph with p={g.p}, q={g.q} has a cycle")
    return Tree(graph=g, profile=degree_profile(g), diameter=_double_sweep(g.adj))


def diameter(t: Tree) -> int:
    """Edge count of a longest path, by two breadth-first sweeps."""
    return _double_sweep(t.graph.adj)


def tree_from_edges(p: int, edge_list: Iterable[Sequence[int]]) -> Tree:
    return as_tree(build_graph(p, edge_list))


# -- shapes -------------------------------------------------------------------


@dataclass(frozen=True)
class Star:
    leaf_count: int


@dataclass(frozen=True)
class DoubleStar:
    """Two adjacent centers carrying ``m`` and ``n`` pendant leaves; stored with m <= n."""

    m: int
    n: int

    def __post_init__(self):
        if self.m > self.n:
            m, n = self.n, self.m
            object.__setattr__(self, "m", m)
            object.__setattr__(self, "n", n)


@dataclass(frozen=True)
class DiamFour:
    """Q(r, m, n): center with r pendants, m legs of length 2, and branches of sizes ``legs``."""

    r: int
    m: int
    legs: tuple[int, ...] = ()
    center: int = field(default=0, compare=False)  # vertex id in the classified tree, not a parameter

    def __post_init__(self):
        object.__setattr__(self, "legs", tuple(sorted(self.legs)))

    @property
    def n(self) -> int:
        return len(self.legs)

    @property
    def n1(self) -> int:
        return self.r + self.m + sum(self.legs)


@dataclass(frozen=True)
class General:
    D: int


TreeShape = Star | DoubleStar | DiamFour | General


def validate_diam_four(shape: DiamFour) -> None:
    if shape.r < 0 or shape.m < 0 or any(x < 2 for x in shape.legs):
        raise InvalidShape(f"bad Q parameters {shape}")
    if shape.m + shape.n < 2:
        raise InvalidShape(f"{shape} does not have diameter four")


@dataclass
class Diam4Roles:
    """Named vertices of a diameter-4 tree, in the order the shape lists them."""

    center: int
    pendants: list[int]
    legs: list[tuple[int, int]]  # (s_i, s'_i)
    branches: list[tuple[int, list[int]]]  # (t_i, [t'_i1, ...]) sorted by size

    def shape(self) -> DiamFour:
        return DiamFour(
            r=len(self.pendants),
            m=len(self.legs),
            legs=tuple(len(b[1]) for b in self.branches),
            center=self.center,
        )


def longest_path(adj: Sequence[Sequence[int]]) -> list[int]:
    d0 = bfs_distances(adj, 0)
    a = max(range(len(adj)), key=lambda i: d0[i])
    # parent-tracking second sweep
    parent = [-1] * len(adj)
    dist = [-1] * len(adj)
    dist[a] = 0
    queue = deque([a])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                parent[w] = u
                queue.append(w)
    b = max(range(len(adj)), key=lambda i: dist[i])
    path = [b]
    while path[-1] != a:
        path.append(parent[path[-1]])
    return path


def diam4_roles(t: Tree) -> Diam4Roles:
    if t.diameter != 4:
        raise InvalidShape(f"diameter is {t.diameter}, not 4")
    adj = t.graph.adj
    center = longest_path(adj)[2]
    pendants, legs, branches = [], [], []
    for w in adj[center]:
        rest = [z for z in adj[w] if z != center]
        if not rest:
            pendants.append(w)
            continue
        # with diameter four every vertex beyond a center neighbor is a leaf
        assert all(len(adj[z]) == 1 for z in rest), "diameter-4 tree outside the Q grammar"
        if len(rest) == 1:
            legs.append((w, rest[0]))
        else:
            branches.append((w, rest))
    branches.sort(key=lambda b: (len(b[1]), b[0]))
    roles = Diam4Roles(center=center, pendants=pendants, legs=legs, branches=branches)
    validate_diam_four(roles.shape())
    return roles


def classify_tree(t: Tree) -> TreeShape:
    if t.p < 3:
        raise TooSmall(f"p={t.p}")
    D = t.diameter
    adj = t.graph.adj
    if D == 2:
        return Star(leaf_count=t.n1)
    if D == 3:
        path = longest_path(adj)
        s, u = path[1], path[2]
        return DoubleStar(m=len(adj[s]) - 1, n=len(adj[u]) - 1)
    if D == 4:
        return diam4_roles(t).shape()
    return General(D=D)


# -- edge-list text format ----------------------------------------------------


def parse_edge_list(text: str) -> SimpleGraph:
    """Parse ``p q`` followed by ``q`` lines ``u v``; ``#`` starts a comment."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected two integers, got {raw!r}")
        try:
            rows.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    if not rows:
        raise ParseError("empty edge list")
    (p, q), body = rows[0], rows[1:]
    if len(body) != q:
        raise ParseError(f"header declares {q} edges, found {len(body)}")
    return build_graph(p, body)


def format_edge_list(g: SimpleGraph) -> str:
    lines = [f"{g.p} {g.q}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"
