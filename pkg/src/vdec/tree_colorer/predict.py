from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ..errors import HypothesisViolated, TooSmall
from ..graph_core import DiamFour, Tree, classify_tree


class Regime(str, Enum):
    STAR = "Star"
    DIAM3 = "Diam3"
    EXCEPTIONAL_U = "ExceptionalU"
    PATH_P5 = "PathP5"
    GENERIC = "Generic"


@dataclass(frozen=True)
class ChiPrediction:
    value: int
    regime: Regime


def diam4_regime(shape: DiamFour) -> Regime:
    if (shape.r, shape.m, shape.n) == (0, 2, 0):
        return Regime.PATH_P5
    if shape.m == 2 and shape.n == 0:
        return Regime.EXCEPTIONAL_U
    if (shape.r, shape.m, shape.n) == (0, 1, 1):
        return Regime.EXCEPTIONAL_U
    return Regime.GENERIC


_OFFSET = {Regime.STAR: 0, Regime.DIAM3: 1, Regime.EXCEPTIONAL_U: 1, Regime.PATH_P5: 2, Regime.GENERIC: 0}


def predict_from_stats(n1: int, n2: int, D: int, shape: DiamFour | None = None) -> ChiPrediction:
    if D == 2:
        regime = Regime.STAR
    elif D == 3:
        regime = Regime.DIAM3
    elif D == 4:
        assert shape is not None
        regime = diam4_regime(shape)
    else:
        if n2 > n1:
            raise HypothesisViolated(f"n2={n2} > n1={n1} with diameter {D}")
        regime = Regime.GENERIC
    return ChiPrediction(n1 + _OFFSET[regime], regime)


def predict_chi_s(t: Tree) -> ChiPrediction:
    """Predicted vdec chromatic number.

    Diameters 2..4 are covered unconditionally by the closed forms; from
    diameter 5 on the tree must satisfy n2 <= n1.
    """
    if t.p < 3:
        raise TooSmall(f"p={t.p}")
    shape = classify_tree(t)
    return predict_from_stats(t.n1, t.n2, t.diameter, shape if isinstance(shape, DiamFour) else None)
