"""
Weakly-hard switching stability

Constraint automata, Kronecker lifting and joint spectral radius brackets for
control loops whose task misses deadlines under weakly-hard constraints.
"""

__version__ = "0.1.0"

from .config import settings
from .config.defaults import ActuatorMode, JsrParams, Strategy
from .weakly_hard import Constraint, ConstraintSet, Outcome, dominant_set, dominates
from .automaton import build_graph, minimize
from .dynamics import StateSpace, closed_loop_set
from .jsr import Bounds, StabilityReport, Verdict, analyze, gripenberg, lower_bound_cycles

__all__ = [
    "settings",
    "ActuatorMode",
    "JsrParams",
    "Strategy",
    "Constraint",
    "ConstraintSet",
    "Outcome",
    "dominant_set",
    "dominates",
    "build_graph",
    "minimize",
    "StateSpace",
    "closed_loop_set",
    "Bounds",
    "StabilityReport",
    "Verdict",
    "analyze",
    "gripenberg",
    "lower_bound_cycles",
]
