"""Plant/controller models and their closed-loop switching matrices"""

from .state_space import StateSpace
from .closed_loop import ClosedLoopSet, blockmatrix, closed_loop_set, simulate

__all__ = [
    "StateSpace",
    "ClosedLoopSet",
    "blockmatrix",
    "closed_loop_set",
    "simulate",
]
