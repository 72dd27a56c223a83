"""Constraint graphs, their minimization and transition matrices"""

from .graph import ConstraintGraph, build_graph, is_feasible, canonical_graph
from .minimize import minimize, merge_labels
from .matrices import (
    transition_matrix,
    transition_matrices,
    initial_gstate,
    step_gstate,
    sequence_matrix,
)
from .export import export_dot, graph_to_dict, graph_from_dict

__all__ = [
    "ConstraintGraph",
    "build_graph",
    "is_feasible",
    "canonical_graph",
    "minimize",
    "merge_labels",
    "transition_matrix",
    "transition_matrices",
    "initial_gstate",
    "step_gstate",
    "sequence_matrix",
    "export_dot",
    "graph_to_dict",
    "graph_from_dict",
]
