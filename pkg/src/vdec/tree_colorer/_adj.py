"""Small helpers on mutable adjacency dicts ``{vertex: set(neighbors)}``.

The induction keeps the original vertex labels of the input tree, so the
reduced trees it builds are sparse dicts rather than dense graphs.
"""
from __future__ import annotations

from collections import deque

from ..graph_core import Edge, SimpleGraph, Tree, build_graph, edge

Adj = dict[int, set[int]]


def from_tree(t: Tree) -> Adj:
    return {u: set(t.graph.adj[u]) for u in range(t.p)}


def copy(adj: Adj) -> Adj:
    return {u: set(ns) for u, ns in adj.items()}


def edges(adj: Adj) -> list[Edge]:
    return sorted({edge(u, w) for u, ns in adj.items() for w in ns})


def degree_count(adj: Adj, d: int) -> int:
    return sum(1 for ns in adj.values() if len(ns) == d)


def leaves(adj: Adj) -> list[int]:
    return sorted(u for u, ns in adj.items() if len(ns) == 1)


def remove(adj: Adj, *vertices: int) -> None:
    for x in vertices:
        for w in adj.pop(x):
            adj[w].discard(x)


def join(adj: Adj, a: int, b: int) -> None:
    assert a != b and b not in adj[a], (a, b)
    adj[a].add(b)
    adj[b].add(a)


def suppress(adj: Adj, x: int) -> tuple[int, int]:
    a, b = sorted(adj[x])
    remove(adj, x)
    join(adj, a, b)
    return a, b


def distances(adj: Adj, src: int) -> dict[int, int]:
    dist = {src: 0}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def diameter(adj: Adj) -> int:
    if len(adj) <= 1:
        return 0
    d0 = distances(adj, min(adj))
    far = max(sorted(d0), key=d0.__getitem__)
    return max(distances(adj, far).values())


def path_between(adj: Adj, a: int, b: int) -> list[int]:
    parent = {a: a}
    queue = deque([a])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in parent:
                parent[w] = u
                queue.append(w)
    path = [b]
    while path[-1] != a:
        path.append(parent[path[-1]])
    return path[::-1]


def diameter_path(adj: Adj) -> list[int]:
    """The longest path with the lexicographically smallest endpoint pair."""
    best: tuple[int, int, int] | None = None
    for a in sorted(adj):
        dist = distances(adj, a)
        for b in sorted(dist):
            if b > a and (best is None or dist[b] > best[0]):
                best = (dist[b], a, b)
    assert best is not None
    return path_between(adj, best[1], best[2])


def to_graph(adj: Adj) -> tuple[SimpleGraph, list[int]]:
    """Dense relabeling; returns the graph and the dense-index -> label list."""
    labels = sorted(adj)
    index = {u: i for i, u in enumerate(labels)}
    g = build_graph(len(labels), [(index[u], index[w]) for u, w in edges(adj)])
    return g, labels


def is_vdec(adj: Adj, colors: dict[Edge, int], k: int) -> bool:
    seen = set()
    for u, ns in adj.items():
        cols = []
        for w in ns:
            c = colors.get(edge(u, w))
            if c is None or not 1 <= c <= k:
                return False
            cols.append(c)
        s = frozenset(cols)
        if len(s) != len(cols) or s in seen:
            return False
        seen.add(s)
    return True


def color_set(adj: Adj, colors: dict[Edge, int], u: int) -> set[int]:
    return {colors[edge(u, w)] for w in adj[u]}
