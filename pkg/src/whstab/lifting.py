"""
Kronecker lifting of a graph-constrained switching system.

P_c = F_c (x) A_c turns switching constrained by the graph into arbitrary
switching over the lifted set; a block-column norm of a lifted product equals
the spectral norm of the matching feasible closed-loop product.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Any, Dict, Mapping

import numpy as np

from .automaton.graph import ConstraintGraph
from .automaton.matrices import transition_matrices
from .dynamics.closed_loop import ClosedLoopSet
from .errors import AlphabetMismatch, DimensionMismatch
from .weakly_hard.outcomes import SequenceLike, as_sequence

logger = logging.getLogger(__name__)


def kron(A, B) -> np.ndarray:
    """Block matrix [a_ij * B]."""
    return np.kron(np.atleast_2d(A), np.atleast_2d(B))


@dataclass(frozen=True, eq=False)
class LiftedSet:
    """Lifted matrices P_c of size (block * nodes) square."""
    matrices: Mapping[str, np.ndarray]
    block: int
    nodes: int

    @property
    def dimension(self) -> int:
        return self.block * self.nodes

    @property
    def alphabet(self):
        return tuple(self.matrices)


def lift(g: ConstraintGraph, cl: ClosedLoopSet) -> LiftedSet:
    """P_c = F_c (x) A_c for every character.

    Raises:
        AlphabetMismatch: if the graph and the closed loop use different alphabets
    """
    if tuple(g.alphabet) != tuple(cl.alphabet):
        raise AlphabetMismatch(
            f"Graph alphabet {g.alphabet} does not match closed-loop alphabet {cl.alphabet}"
        )
    F = transition_matrices(g)
    matrices = {c: kron(F[c], cl[c]) for c in g.alphabet}
    logger.debug(f"Lifted {len(g)} nodes x dimension {cl.dimension}")
    return LiftedSet(matrices, cl.dimension, len(g))


def lifted_product(ls: LiftedSet, seq: SequenceLike, xi0) -> np.ndarray:
    """xi_N = P_{a_N} ... P_{a_1} xi_0."""
    xi = np.asarray(xi0, dtype=float).reshape(-1)
    if xi.shape[0] != ls.dimension:
        raise DimensionMismatch(f"xi0 has {xi.shape[0]} entries, the lifted set has {ls.dimension}")
    for symbol in as_sequence(seq):
        if symbol not in ls.matrices:
            raise AlphabetMismatch(f"Symbol {symbol!r} is not a lifted character")
        xi = ls.matrices[symbol] @ xi
    return xi


def lifted_matrix_product(ls: LiftedSet, seq: SequenceLike) -> np.ndarray:
    """P_alpha = P_{a_N} ... P_{a_1}."""
    result = np.eye(ls.dimension)
    for symbol in as_sequence(seq):
        result = ls.matrices[symbol] @ result
    return result


def block_column_norm(P, block: int) -> float:
    """Max over block columns of the summed spectral norms of their blocks."""
    P = np.asarray(P, dtype=float)
    if P.ndim != 2 or P.shape[0] % block or P.shape[1] % block:
        raise DimensionMismatch(f"Matrix of shape {P.shape} is not divisible into {block}x{block} blocks")
    rows, cols = P.shape[0] // block, P.shape[1] // block
    blocks = P.reshape(rows, block, cols, block).transpose(0, 2, 1, 3)
    norms = np.linalg.norm(blocks, ord=2, axis=(-2, -1))
    return float(norms.sum(axis=0).max())


def lifted_rate(ls: LiftedSet, length: int) -> float:
    """max over every alpha of the given length of block_column_norm(P_alpha)^(1/length)."""
    if length < 1:
        raise ValueError(f"length must be at least 1, got {length}")
    best = 0.0
    for seq in itertools.product(ls.alphabet, repeat=length):
        value = block_column_norm(lifted_matrix_product(ls, seq), ls.block)
        best = max(best, value ** (1.0 / length))
    return best


def lifted_to_dict(ls: LiftedSet) -> Dict[str, Any]:
    return {
        "block": ls.block,
        "nodes": ls.nodes,
        "matrices": {c: P.tolist() for c, P in ls.matrices.items()},
    }
