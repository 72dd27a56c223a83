"""
Discrete-time LTI systems of the form

  x_{t+1} = A x_t + B u_t
  y_t     = C x_t + D u_t
"""
from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np

from ..errors import DimensionMismatch, NonSquare


def _as_matrix(name: str, value) -> np.ndarray:
    M = np.atleast_2d(np.asarray(value, dtype=float))
    if M.ndim != 2:
        raise DimensionMismatch(f"{name} must be a 2-D matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError(f"{name} has non-finite entries")
    return M


@dataclass(frozen=True, eq=False)
class StateSpace:
    """A sampled state-space model; ``period_s`` is metadata only."""
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray
    period_s: Optional[float] = None

    def __post_init__(self):
        A, B, C, D = (_as_matrix(n, v) for n, v in zip("ABCD", (self.A, self.B, self.C, self.D)))
        if A.shape[0] != A.shape[1]:
            raise NonSquare(f"The state update matrix A must be square, got {A.shape}")
        if A.shape[0] != B.shape[0]:
            raise DimensionMismatch("The height of the state update matrix A and the input matrix B must be the same")
        if A.shape[1] != C.shape[1]:
            raise DimensionMismatch("The width of the state update matrix A and the state output matrix C must be the same")
        if C.shape[0] != D.shape[0]:
            raise DimensionMismatch("The height of the state output matrix C and the feedthrough matrix D must be the same")
        if B.shape[1] != D.shape[1]:
            raise DimensionMismatch("The width of the input matrix B and the feedthrough matrix D must be the same")
        for name, M in zip("ABCD", (A, B, C, D)):
            M.setflags(write=False)
            object.__setattr__(self, name, M)

    @property
    def num_states(self) -> int:
        return self.A.shape[0]

    @property
    def num_inputs(self) -> int:
        return self.B.shape[1]

    @property
    def num_outputs(self) -> int:
        return self.C.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, StateSpace):
            return NotImplemented
        return self.period_s == other.period_s and all(
            np.array_equal(getattr(self, n), getattr(other, n)) for n in "ABCD"
        )

    def to_dict(self) -> Dict[str, Any]:
        data = {n: getattr(self, n).tolist() for n in "ABCD"}
        if self.period_s is not None:
            data["period_s"] = self.period_s
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "StateSpace":
        """Create a StateSpace from a dictionary, ignoring unknown keys."""
        return cls(
            A=data["A"],
            B=data["B"],
            C=data["C"],
            D=data["D"],
            period_s=data.get("period_s"),
        )
