"""Exhaustive generation of free trees and small connected graphs."""
from __future__ import annotations

import heapq
from itertools import product
from typing import Iterator

from ..graph_core import SimpleGraph, Tree, build_graph, tree_from_edges
from .canon import centroids, graph_certificate, rooted_code

MAX_TREE_VERTICES = 16


def rooted_level_sequences(n: int) -> Iterator[list[int]]:
    """Every rooted unlabeled tree on n vertices once, as a canonical level sequence.

    Beyer-Hedetniemi successor rule, root at level 0, path first and star last.
    """
    if n == 1:
        yield [0]
        return
    seq = list(range(n))
    while True:
        yield list(seq)
        p = max((i for i in range(n) if seq[i] > 1), default=None)
        if p is None:
            return
        q = max(i for i in range(p) if seq[i] == seq[p] - 1)
        for i in range(p, n):
            seq[i] = seq[i - (p - q)]


def _adj_from_levels(seq: list[int]) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in seq]
    stack: list[int] = []
    for v, depth in enumerate(seq):
        del stack[depth:]
        if stack:
            adj[stack[-1]].append(v)
            adj[v].append(stack[-1])
        stack.append(v)
    return adj


class TreeIterator:
    """Free trees on exactly n vertices: rooted level sequences kept only when
    the root is a centroid and, for two centroids, the rooting with the larger code.
    """

    def __init__(self, n: int):
        if not 1 <= n <= MAX_TREE_VERTICES:
            raise ValueError(f"n must be in [1, {MAX_TREE_VERTICES}], got {n}")
        self.n = n
        self._rooted = rooted_level_sequences(n)
        self.current: list[int] | None = None

    def __iter__(self) -> TreeIterator:
        return self

    def __next__(self) -> tuple[list[int], Tree]:
        for seq in self._rooted:
            adj = _adj_from_levels(seq)
            cents = centroids(adj)
            if 0 not in cents:
                continue
            if len(cents) == 2:
                other = cents[1] if cents[0] == 0 else cents[0]
                if rooted_code(adj, other) > seq:
                    continue
            self.current = seq
            edges = [(u, w) for u in range(self.n) for w in adj[u] if u < w]
            return seq, tree_from_edges(self.n, edges)
        raise StopIteration


def enumerate_trees(n: int) -> Iterator[Tree]:
    for _, t in TreeIterator(n):
        yield t


def enumerate_trees_with_ids(n: int) -> Iterator[tuple[str, Tree]]:
    for seq, t in TreeIterator(n):
        yield ".".join(map(str, seq)), t


# -- independent oracle ---------------------------------------------------------------


def prufer_decode(seq: tuple[int, ...] | list[int], n: int) -> list[tuple[int, int]]:
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    heap = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(heap)
    edges = []
    for x in seq:
        leaf = heapq.heappop(heap)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(heap, x)
    edges.append((heapq.heappop(heap), heapq.heappop(heap)))
    return edges


def prufer_dedup_count(n: int) -> int:
    """Number of free trees on n vertices: decode all n^(n-2) Pruefer sequences
    and deduplicate by the general graph certificate."""
    if n <= 2:
        return 1
    seen = set()
    for seq in product(range(n), repeat=n - 2):
        seen.add(graph_certificate(build_graph(n, prufer_decode(seq, n))))
    return len(seen)


# -- connected graphs -----------------------------------------------------------------


def enumerate_connected_graphs(p: int, q_max: int, q_min: int | None = None) -> Iterator[SimpleGraph]:
    """Non-isomorphic connected simple graphs on p vertices, p-1 <= q <= q_max.

    Grows edge by edge from the free trees; every connected graph with q + 1
    edges has a connected spanning subgraph with q edges.
    """
    level = {}
    for t in enumerate_trees(p):
        level.setdefault(graph_certificate(t.graph), t.graph)
    q = p - 1
    lo = q_min if q_min is not None else q
    while q <= q_max and level:
        if q >= lo:
            for cert in sorted(level):
                yield level[cert]
        if q == q_max:
            return
        nxt: dict = {}
        for g in level.values():
            present = set(g.edges)
            for u in range(p):
                for v in range(u + 1, p):
                    if (u, v) not in present:
                        h = build_graph(p, list(g.edges) + [(u, v)])
                        nxt.setdefault(graph_certificate(h), h)
        level = nxt
        q += 1
