"""Canonical trees for the Star / DoubleStar / DiamFour families."""
from __future__ import annotations

from ..errors import InvalidShape
from ..graph_core import (
    Diam4Roles,
    DiamFour,
    DoubleStar,
    Star,
    Tree,
    TreeShape,
    tree_from_edges,
    validate_diam_four,
)


def diam4_roles_builder(shape: DiamFour) -> Diam4Roles:
    """Vertex roles of the canonical Q(r, m, legs): center 0, then pendants, legs, branches."""
    validate_diam_four(shape)
    nxt = 1
    pendants = list(range(nxt, nxt + shape.r))
    nxt += shape.r
    legs = []
    for _ in range(shape.m):
        legs.append((nxt, nxt + 1))
        nxt += 2
    branches = []
    for size in shape.legs:
        branches.append((nxt, list(range(nxt + 1, nxt + 1 + size))))
        nxt += 1 + size
    return Diam4Roles(center=0, pendants=pendants, legs=legs, branches=branches)


def shape_builder(shape: TreeShape) -> Tree:
    if isinstance(shape, Star):
        if shape.leaf_count < 2:
            raise InvalidShape(f"star needs at least 2 leaves, got {shape.leaf_count}")
        return tree_from_edges(shape.leaf_count + 1, [(0, i) for i in range(1, shape.leaf_count + 1)])
    if isinstance(shape, DoubleStar):
        m, n = shape.m, shape.n
        if m < 1:
            raise InvalidShape(f"double star needs m, n >= 1, got {shape}")
        edges = [(0, 1)]
        edges += [(0, i) for i in range(2, m + 2)]
        edges += [(1, i) for i in range(m + 2, m + n + 2)]
        return tree_from_edges(m + n + 2, edges)
    if isinstance(shape, DiamFour):
        roles = diam4_roles_builder(shape)
        edges = [(0, w) for w in roles.pendants]
        for s, sp in roles.legs:
            edges += [(0, s), (s, sp)]
        for t, tl in roles.branches:
            edges.append((0, t))
            edges += [(t, w) for w in tl]
        return tree_from_edges(1 + shape.r + 2 * shape.m + sum(1 + x for x in shape.legs), edges)
    raise InvalidShape(f"cannot build {shape!r}")
