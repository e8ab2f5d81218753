"""Canonical forms: level sequences for trees, a certificate for small graphs."""
from __future__ import annotations

from typing import Mapping, Sequence

from ..graph_core import SimpleGraph, Tree


def rooted_code(adj: Mapping[int, Sequence[int]] | Sequence[Sequence[int]], root: int) -> list[int]:
    """Canonical (lexicographically largest) preorder level sequence rooted at ``root``."""
    def code(u: int, parent: int, depth: int) -> list[int]:
        kids = [code(w, u, depth + 1) for w in adj[u] if w != parent]
        kids.sort(reverse=True)
        out = [depth]
        for k in kids:
            out.extend(k)
        return out

    return code(root, -1, 0)


def centroids(adj: Sequence[Sequence[int]]) -> list[int]:
    n = len(adj)
    order, parent = [0], [-1] * n
    for u in order:
        for w in adj[u]:
            if w != parent[u]:
                parent[w] = u
                order.append(w)
    size = [1] * n
    for u in reversed(order[1:]):
        size[parent[u]] += size[u]
    out = []
    for u in range(n):
        heaviest = n - size[u]
        for w in adj[u]:
            if w != parent[u]:
                heaviest = max(heaviest, size[w])
        if 2 * heaviest <= n:
            out.append(u)
    return out


def level_sequence_id(seq: Sequence[int]) -> str:
    return ".".join(map(str, seq))


def tree_canonical_sequence(t: Tree | Sequence[Sequence[int]]) -> list[int]:
    adj = t.graph.adj if isinstance(t, Tree) else t
    if len(adj) == 1:
        return [0]
    return max(rooted_code(adj, c) for c in centroids(adj))


def canonical_id(t: Tree) -> str:
    return level_sequence_id(tree_canonical_sequence(t))


# -- general small graphs ---------------------------------------------------------


def _refine(adj: Sequence[set[int]], cells: list[list[int]]) -> list[list[int]]:
    while True:
        where = {}
        for i, cell in enumerate(cells):
            for v in cell:
                where[v] = i
        new: list[list[int]] = []
        for cell in cells:
            if len(cell) == 1:
                new.append(cell)
                continue
            sig = {}
            for v in cell:
                counts = [0] * len(cells)
                for w in adj[v]:
                    counts[where[w]] += 1
                sig[v] = tuple(counts)
            for key in sorted(set(sig.values())):
                new.append([v for v in cell if sig[v] == key])
        if len(new) == len(cells):
            return new
        cells = new


def graph_certificate(g: SimpleGraph) -> tuple:
    """Isomorphism-invariant certificate by individualization and refinement.

    Exhaustive over the search tree (no automorphism pruning); intended for
    graphs with at most a dozen vertices.
    """
    n = g.p
    adj = [set(a) for a in g.adj]
    degree_cells: dict[int, list[int]] = {}
    for v in range(n):
        degree_cells.setdefault(len(adj[v]), []).append(v)
    start = _refine(adj, [degree_cells[d] for d in sorted(degree_cells)])
    best: tuple | None = None

    def search(cells: list[list[int]]) -> None:
        nonlocal best
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            pos = {c[0]: i for i, c in enumerate(cells)}
            enc = tuple(sorted((min(pos[u], pos[v]), max(pos[u], pos[v])) for u, v in g.edges))
            if best is None or enc < best:
                best = enc
            return
        for v in cells[target]:
            rest = [w for w in cells[target] if w != v]
            split = cells[:target] + [[v], rest] + cells[target + 1:]
            search(_refine(adj, split))

    search(start)
    return (n, best)
