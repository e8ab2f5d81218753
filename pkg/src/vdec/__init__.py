"""Vertex-distinguishing edge colorings: exact search, tree constructions, graph bounds."""
from .errors import VdecError
from .exact_solver import SolverConfig, exact_chi_es, exact_chi_s
from .graph_core import SimpleGraph, Tree, as_tree, build_graph, classify_tree, parse_edge_list, tree_from_edges
from .tree_colorer import color_tree, equitable_finish, predict_chi_s
from .verifier import EdgeColoring, verify

__version__ = "0.1.0"

__all__ = [
    "EdgeColoring",
    "SimpleGraph",
    "SolverConfig",
    "Tree",
    "VdecError",
    "as_tree",
    "build_graph",
    "classify_tree",
    "color_tree",
    "equitable_finish",
    "exact_chi_es",
    "exact_chi_s",
    "parse_edge_list",
    "predict_chi_s",
    "tree_from_edges",
    "verify",
]
