"""Properness, vertex-distinguishing and equitability checks for edge colorings."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import comb
from typing import Mapping

from .errors import IndistinguishableByStructure, ParseError, UncoloredEdge
from .graph_core import DegreeProfile, Edge, SimpleGraph, edge


@dataclass(frozen=True)
class EdgeColoring:
    """Edge -> positive color, together with the declared palette size."""

    assignment: Mapping[Edge, int]
    palette: int

    @classmethod
    def from_dict(cls, colors: Mapping[Edge, int], palette: int | None = None) -> EdgeColoring:
        norm = {edge(*e): int(c) for e, c in colors.items()}
        if palette is None:
            palette = max(norm.values(), default=0)
        return cls(assignment=norm, palette=palette)

    @property
    def color_count(self) -> int:
        return len(set(self.assignment.values()))

    def class_sizes(self) -> list[int]:
        """Sizes of S_1..S_palette, including empty classes."""
        cnt = Counter(self.assignment.values())
        return [cnt.get(i, 0) for i in range(1, self.palette + 1)]

    def __getitem__(self, e: Edge) -> int:
        return self.assignment[edge(*e)]

    def relabeled(self) -> EdgeColoring:
        """Map the used colors onto 1..k preserving their order."""
        used = sorted(set(self.assignment.values()))
        new = {c: i for i, c in enumerate(used, 1)}
        return EdgeColoring({e: new[c] for e, c in self.assignment.items()}, palette=len(used))


def _incident_colors(g: SimpleGraph, c: EdgeColoring, u: int) -> list[int]:
    out = []
    for w in g.adj[u]:
        e = edge(u, w)
        if e not in c.assignment:
            raise UncoloredEdge(e)
        out.append(c.assignment[e])
    return out


def color_set(g: SimpleGraph, c: EdgeColoring, u: int) -> frozenset[int]:
    return frozenset(_incident_colors(g, c, u))


@dataclass(frozen=True)
class Violation:
    kind: str  # "clash" | "duplicate_set" | "unbalanced" | "palette"
    vertices: tuple[int, ...] = ()
    colors: tuple[int, ...] = ()
    detail: str = ""


@dataclass(frozen=True)
class VdecReport:
    proper: bool
    distinguishing: bool
    equitable: bool
    violation: Violation | None = None
    unused_colors: tuple[int, ...] = field(default=())

    @property
    def is_vdec(self) -> bool:
        return self.proper and self.distinguishing


def check_structure(g: SimpleGraph) -> None:
    """Raise if no vdec can exist (isolated edge or two isolated vertices)."""
    degs = g.degrees()
    if degs.count(0) >= 2:
        raise IndistinguishableByStructure("two isolated vertices")
    for u, v in g.edges:
        if degs[u] == 1 and degs[v] == 1:
            raise IndistinguishableByStructure(f"isolated edge {(u, v)}")


def verify(g: SimpleGraph, c: EdgeColoring) -> VdecReport:
    check_structure(g)
    for e in g.edges:
        if e not in c.assignment:
            raise UncoloredEdge(e)

    first: Violation | None = None
    if any(col < 1 or col > c.palette for col in c.assignment.values()):
        bad = sorted({col for col in c.assignment.values() if col < 1 or col > c.palette})
        first = Violation("palette", colors=tuple(bad), detail=f"outside [1, {c.palette}]")

    proper = True
    sets: list[frozenset[int]] = []
    for u in range(g.p):
        cols = _incident_colors(g, c, u)
        s = frozenset(cols)
        if len(s) != len(cols):
            proper = False
            if first is None:
                dup = next(x for x in cols if cols.count(x) > 1)
                first = Violation("clash", vertices=(u,), colors=(dup,))
        sets.append(s)

    distinguishing = True
    owner: dict[frozenset[int], int] = {}
    for u, s in enumerate(sets):
        if s in owner:
            distinguishing = False
            if first is None:
                first = Violation("duplicate_set", vertices=(owner[s], u), colors=tuple(sorted(s)))
            break
        owner[s] = u

    sizes = c.class_sizes()
    equitable = not sizes or max(sizes) - min(sizes) <= 1
    if not equitable and first is None:
        big = max(range(len(sizes)), key=lambda i: sizes[i]) + 1
        small = min(range(len(sizes)), key=lambda i: sizes[i]) + 1
        first = Violation("unbalanced", colors=(big, small), detail=f"sizes {sizes}")
    if first is not None and first.kind == "palette":
        proper = False

    unused = tuple(i + 1 for i, s in enumerate(sizes) if s == 0)
    return VdecReport(proper, distinguishing, equitable, first, unused)


def distinguishing_pairwise(g: SimpleGraph, c: EdgeColoring) -> bool:
    """Quadratic cross-check of the distinguishing property."""
    sets = [color_set(g, c, u) for u in range(g.p)]
    return all(sets[i] != sets[j] for i in range(g.p) for j in range(i + 1, g.p))


def conjecture_lower_bound(prof: DegreeProfile) -> int:
    """Smallest k with C(k, d) >= n_d for every degree d >= 1 present."""
    k = max(prof.Delta, 1)
    while any(comb(k, d) < n for d, n in prof.counts.items() if d >= 1):
        k += 1
    return k


# -- coloring text format -----------------------------------------------------


def format_coloring(c: EdgeColoring) -> str:
    lines = [f"palette {c.palette}"]
    lines += [f"{u} {v} {col}" for (u, v), col in sorted(c.assignment.items())]
    return "\n".join(lines) + "\n"


def parse_coloring(text: str) -> EdgeColoring:
    palette = None
    colors: dict[Edge, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "palette":
            if len(parts) != 2 or palette is not None:
                raise ParseError(f"line {lineno}: bad palette header")
            palette = int(parts[1])
            continue
        if len(parts) != 3:
            raise ParseError(f"line {lineno}: expected 'u v c', got {raw!r}")
        try:
            u, v, col = map(int, parts)
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
        if col < 1:
            raise ParseError(f"line {lineno}: colors are positive")
        e = edge(u, v)
        if e in colors:
            raise ParseError(f"line {lineno}: edge {e} colored twice")
        colors[e] = col
    if palette is None:
        raise ParseError("missing 'palette k' header")
    return EdgeColoring(colors, palette)
