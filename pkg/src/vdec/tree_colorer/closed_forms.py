"""Explicit colorings of stars, double stars and diameter-4 trees Q(r, m, n)."""
from __future__ import annotations

from ..errors import InvalidShape
from ..graph_core import Diam4Roles, DiamFour, Edge, edge, validate_diam_four
from ..verifier import EdgeColoring
from . import _adj
from ._adj import Adj


def star_colors(center: int, leaves: list[int]) -> dict[Edge, int]:
    return {edge(center, w): i for i, w in enumerate(sorted(leaves), 1)}


def double_star_colors(s: int, t: int, s_leaves: list[int], t_leaves: list[int]) -> dict[Edge, int]:
    """f(s s_i) = i, f(s t) = m + 1, f(t t_j) = m + 1 + j."""
    m = len(s_leaves)
    colors = {edge(s, w): i for i, w in enumerate(sorted(s_leaves), 1)}
    colors[edge(s, t)] = m + 1
    colors.update({edge(t, w): m + 1 + j for j, w in enumerate(sorted(t_leaves), 1)})
    return colors


def diam4_colors(roles: Diam4Roles) -> dict[Edge, int]:
    """Coloring of Q(r, m, n) with n1 colors, or n1 + 1 / n1 + 2 on the exceptional shapes."""
    w0 = roles.center
    r, m, n = len(roles.pendants), len(roles.legs), len(roles.branches)
    f: dict[Edge, int] = {}

    if (r, m, n) == (0, 2, 0):  # the path on five vertices
        (s1, s1p), (s2, s2p) = roles.legs
        f[edge(s1, s1p)] = 1
        f[edge(w0, s1)] = 2
        f[edge(w0, s2)] = 3
        f[edge(s2, s2p)] = 4
        return f

    if n == 0 and m == 2:  # Q(r, 2, 0) with r >= 1: one extra color
        for i, (s, sp) in enumerate(roles.legs, 1):
            f[edge(s, sp)] = i
        f[edge(w0, roles.legs[0][0])] = 2
        f[edge(w0, roles.legs[1][0])] = 3
        for j, w in enumerate(roles.pendants, 1):
            f[edge(w0, w)] = 3 + j
        return f

    if n == 0:  # m >= 3: spokes shifted by one around the legs
        for i, (s, sp) in enumerate(roles.legs, 1):
            f[edge(s, sp)] = i
            f[edge(w0, s)] = i + 1 if i < m else 1
        for j, w in enumerate(roles.pendants, 1):
            f[edge(w0, w)] = m + j
        return f

    # branch leaves get consecutive colors after the m leg colors
    firsts = []
    nxt = m + 1
    for t, tl in roles.branches:
        firsts.append(nxt)
        for w in tl:
            f[edge(t, w)] = nxt
            nxt += 1
    top = nxt - 1

    if m == 0:  # n >= 2: each branch spoke borrows the next branch's first leaf color
        for j, (t, _) in enumerate(roles.branches):
            f[edge(w0, t)] = firsts[(j + 1) % n]
    elif (r, m, n) == (0, 1, 1):  # Q(0, 1, 1): one extra color
        (s1, s1p), = roles.legs
        f[edge(s1, s1p)] = 1
        f[edge(w0, s1)] = 2
        f[edge(w0, roles.branches[0][0])] = top + 1
        return f
    else:
        for i, (s, sp) in enumerate(roles.legs, 1):
            f[edge(s, sp)] = i
            f[edge(w0, s)] = i + 1 if i < m else firsts[0]
        for j, (t, _) in enumerate(roles.branches):
            f[edge(w0, t)] = firsts[j + 1] if j + 1 < n else 1

    for j, w in enumerate(roles.pendants, 1):
        f[edge(w0, w)] = top + j
    return f


def roles_from_adj(adj: Adj) -> Diam4Roles:
    path = _adj.diameter_path(adj)
    if len(path) != 5:
        raise InvalidShape(f"diameter is {len(path) - 1}, not 4")
    w0 = path[2]
    pendants, legs, branches = [], [], []
    for w in sorted(adj[w0]):
        rest = sorted(adj[w] - {w0})
        if not rest:
            pendants.append(w)
        elif len(rest) == 1:
            legs.append((w, rest[0]))
        else:
            branches.append((w, rest))
    branches.sort(key=lambda b: (len(b[1]), b[0]))
    roles = Diam4Roles(center=w0, pendants=pendants, legs=legs, branches=branches)
    validate_diam_four(roles.shape())
    return roles


def closed_form_adj(adj: Adj) -> dict[Edge, int]:
    """Coloring of a tree with diameter 2, 3 or 4 given as an adjacency dict."""
    D = _adj.diameter(adj)
    if D == 2:
        center = max(sorted(adj), key=lambda u: len(adj[u]))
        return star_colors(center, sorted(adj[center]))
    if D == 3:
        path = _adj.diameter_path(adj)
        s, t = path[1], path[2]
        return double_star_colors(s, t, sorted(adj[s] - {t}), sorted(adj[t] - {s}))
    if D == 4:
        return diam4_colors(roles_from_adj(adj))
    raise InvalidShape(f"no closed form for diameter {D}")


def color_double_star(m: int, n: int) -> EdgeColoring:
    """Coloring of S_{m+1,n+1} as built by ``shape_builder(DoubleStar(m, n))``.

    Vertex 0 is the center carrying ``m`` leaves (2..m+1), vertex 1 the other.
    """
    if m < 1 or n < 1:
        raise InvalidShape(f"double star needs m, n >= 1, got {m}, {n}")
    s_leaves = list(range(2, m + 2))
    t_leaves = list(range(m + 2, m + n + 2))
    return EdgeColoring(double_star_colors(0, 1, s_leaves, t_leaves), m + n + 1)


def color_diam4(shape: DiamFour) -> EdgeColoring:
    """Coloring of the canonical Q(r, m, legs) built by ``shape_builder``."""
    from ..conjecture_lab.shapes import diam4_roles_builder

    validate_diam_four(shape)
    roles = diam4_roles_builder(shape)
    colors = diam4_colors(roles)
    return EdgeColoring(colors, max(colors.values()))
