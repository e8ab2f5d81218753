"""Constructive vdecs of trees: closed forms, the inductive algorithm, equitable repair."""
from .closed_forms import color_diam4, color_double_star
from .induction import ColoringTrace, ReductionStep, color_tree, find_balancing_vertex
from .equitable import equitable_finish
from .predict import ChiPrediction, Regime, predict_chi_s

__all__ = [
    "ChiPrediction",
    "ColoringTrace",
    "ReductionStep",
    "Regime",
    "color_diam4",
    "color_double_star",
    "color_tree",
    "equitable_finish",
    "find_balancing_vertex",
    "predict_chi_s",
]
