"""Exhaustive tree and small-graph enumeration with batch conjecture checks."""
from .canon import canonical_id, graph_certificate
from .enumeration import (
    TreeIterator,
    enumerate_connected_graphs,
    enumerate_trees,
    enumerate_trees_with_ids,
    prufer_dedup_count,
)
from .shapes import shape_builder
from .survey import Flag, SurveyRow, run_survey

__all__ = [
    "Flag",
    "SurveyRow",
    "TreeIterator",
    "canonical_id",
    "enumerate_connected_graphs",
    "enumerate_trees",
    "enumerate_trees_with_ids",
    "graph_certificate",
    "prufer_dedup_count",
    "run_survey",
    "shape_builder",
]
