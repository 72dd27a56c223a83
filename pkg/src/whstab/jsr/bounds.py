"""
JSR brackets, spectral helpers and the closed-walk lower bound.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, Optional

import numpy as np

from ..automaton.graph import ConstraintGraph
from ..config import settings
from ..dynamics.closed_loop import ClosedLoopSet
from ..errors import NonSquare
from ..weakly_hard.outcomes import SequenceLike, as_sequence

logger = logging.getLogger(__name__)


@dataclass
class Bounds:
    """A bracket lb <= rho <= ub with its certificate metadata."""
    lb: float = 0.0
    ub: float = math.inf
    lb_witness: str = ""
    params: Dict[str, Any] = field(default_factory=dict)
    budget_exhausted: bool = False
    explored: int = 0
    depth: int = 0
    norm: Optional[str] = None  # norm pass that produced ub

    @property
    def gap(self) -> float:
        return self.ub - self.lb

    def to_dict(self) -> Dict[str, Any]:
        return {
            "lb": self.lb,
            "ub": self.ub if math.isfinite(self.ub) else None,
            "lb_witness": self.lb_witness,
            "params": dict(self.params),
            "budget_exhausted": self.budget_exhausted,
            "explored": self.explored,
            "depth": self.depth,
            "norm": self.norm,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Bounds":
        ub = data.get("ub")
        return cls(
            lb=float(data.get("lb", 0.0)),
            ub=math.inf if ub is None else float(ub),
            lb_witness=data.get("lb_witness", ""),
            params=dict(data.get("params", {})),
            budget_exhausted=bool(data.get("budget_exhausted", False)),
            explored=int(data.get("explored", 0)),
            depth=int(data.get("depth", 0)),
            norm=data.get("norm"),
        )


def spectral_radius(A) -> float:
    """Largest eigenvalue magnitude."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NonSquare(f"Spectral radius needs a square matrix, got {A.shape}")
    if A.size == 0:
        return 0.0
    return float(np.max(np.abs(np.linalg.eigvals(A))))


def spectral_norm(A) -> float:
    """Largest singular value."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    if A.size == 0:
        return 0.0
    return float(np.linalg.norm(A, ord=2))


def canonical_rotation(labels: str) -> str:
    """Lexicographically smallest rotation; equal for every rotation of a cycle."""
    if not labels:
        return labels
    return min(labels[i:] + labels[:i] for i in range(len(labels)))


def periodic_rates(products: np.ndarray, length: int) -> np.ndarray:
    """rho(P)^(1/length) for a stack of products."""
    radii = np.abs(np.linalg.eigvals(products)).max(axis=-1)
    return radii ** (1.0 / length)


def lower_bound_cycles(g: ConstraintGraph, cl: ClosedLoopSet, max_len: int) -> Bounds:
    """Largest periodic rate over the closed walks of length <= max_len.

    Every closed walk labels a feasible periodic sequence, so its rate is a
    valid lower bound. Rotations of the same cycle are evaluated once.

    Args:
        g: Constraint graph
        cl: Closed-loop matrices over the same alphabet
        max_len: Longest cycle length to enumerate

    Returns:
        Bounds: lb and its witness; ub is left at infinity
    """
    if max_len < 1:
        raise ValueError(f"max_len must be at least 1, got {max_len}")

    d = cl.dimension
    seen = set()
    best, witness = 0.0, ""

    for root in range(len(g)):
        ends = np.array([root])
        labels = [""]
        products = np.eye(d)[None, :, :]

        for length in range(1, max_len + 1):
            new_ends, new_labels, new_products = [], [], []
            for symbol in g.alphabet:
                sources = [w for w, end in enumerate(ends) if g.successor(int(end), symbol) is not None]
                if not sources:
                    continue
                new_ends.extend(g.successor(int(ends[w]), symbol) for w in sources)
                new_labels.extend(labels[w] + symbol for w in sources)
                new_products.append(cl[symbol] @ products[sources])
            if not new_ends:
                break
            ends = np.array(new_ends)
            labels = new_labels
            products = np.concatenate(new_products)

            closed = []
            for w in np.flatnonzero(ends == root):
                key = canonical_rotation(labels[w])
                if key not in seen:
                    seen.add(key)
                    closed.append((w, key))
            if closed:
                rates = periodic_rates(products[[w for w, _ in closed]], length)
                for (w, key), rate in zip(closed, rates):
                    if rate > best:
                        best, witness = float(rate), key

            if len(ends) > settings.MAX_FRONTIER:
                logger.warning(
                    f"Closed-walk search from node {root} stopped at length {length}: "
                    f"{len(ends)} walks exceed WHSTAB_MAX_FRONTIER"
                )
                break

    logger.info(f"Closed-walk lower bound {best:.6f} from cycle {witness or '-'}")
    return Bounds(lb=best, lb_witness=witness, params={"max_len": max_len})


def walk_norm_rate(cl: ClosedLoopSet, sequences: Iterable[SequenceLike]) -> float:
    """max ||A_alpha||^(1/|alpha|) over the non-empty sequences given."""
    best = 0.0
    for seq in sequences:
        text = as_sequence(seq)
        if not text:
            continue
        best = max(best, spectral_norm(cl.product(text)) ** (1.0 / len(text)))
    return best
