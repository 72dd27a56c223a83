"""
Transition matrices and G-state dynamics of a constraint graph.
"""
from typing import Dict

import numpy as np

from ..errors import AlphabetMismatch, DimensionMismatch
from ..weakly_hard.outcomes import SequenceLike, as_sequence
from .graph import ConstraintGraph


def transition_matrix(g: ConstraintGraph, c: str) -> np.ndarray:
    """F_c with F[j, i] = 1 for every edge i --c--> j.

    Raises:
        AlphabetMismatch: if ``c`` is not in the graph's alphabet
    """
    c = str(c)
    if c not in g.alphabet:
        raise AlphabetMismatch(f"Symbol {c!r} is not in the {g.strategy.value} alphabet")
    F = np.zeros((len(g), len(g)), dtype=int)
    for i, symbol, j in g.edges:
        if symbol == c:
            F[j, i] = 1
    return F


def transition_matrices(g: ConstraintGraph) -> Dict[str, np.ndarray]:
    return {c: transition_matrix(g, c) for c in g.alphabet}


def initial_gstate(g: ConstraintGraph) -> np.ndarray:
    """Indicator vector of the initial node."""
    q = np.zeros(len(g), dtype=int)
    q[g.initial] = 1
    return q


def step_gstate(F: np.ndarray, q: np.ndarray) -> np.ndarray:
    """q_{t+1} = F_c q_t."""
    F = np.asarray(F)
    q = np.asarray(q)
    if F.ndim != 2 or F.shape[0] != F.shape[1] or q.shape != (F.shape[1],):
        raise DimensionMismatch(f"Cannot apply a {F.shape} transition matrix to a {q.shape} G-state")
    return F @ q


def sequence_matrix(g: ConstraintGraph, seq: SequenceLike) -> np.ndarray:
    """F_alpha = F_{a_N} ... F_{a_1}; the identity for the empty sequence."""
    matrices = transition_matrices(g)
    result = np.eye(len(g), dtype=int)
    for symbol in as_sequence(seq):
        if symbol not in matrices:
            raise AlphabetMismatch(f"Symbol {symbol!r} is not in the {g.strategy.value} alphabet")
        result = matrices[symbol] @ result
    return result
