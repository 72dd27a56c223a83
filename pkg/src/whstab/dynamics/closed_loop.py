"""
Closed-loop switching matrices of a plant/controller pair under deadline misses.

The closed-loop state is x~ = [x; z; u] under Kill and [x; z; u; x^; u^]
under Skip-Next, where x^ and u^ hold the plant state and command sampled
when the late job started. The controller regulates e = -y.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence

import numpy as np

from ..config.defaults import ActuatorMode, Strategy
from ..errors import AlphabetMismatch, DimensionMismatch, NonSquare
from ..weakly_hard.outcomes import Outcome, SequenceLike, alphabet, as_sequence, check_alphabet, validate_sequence
from .state_space import StateSpace

logger = logging.getLogger(__name__)


def blockmatrix(M: List[list], blocklengths: Sequence[int]) -> np.ndarray:
    """Square block matrix like ``np.block`` where an integer 0 is a zero block.

    Example:
        blockmatrix([[A, B], [0, C]], [a, b]) with A (a,a), B (a,b), C (b,b)
    """
    if len(M) != len(blocklengths) or any(len(row) != len(blocklengths) for row in M):
        raise DimensionMismatch("Each row of M must have as many entries as there are blocks")
    offsets = np.concatenate(([0], np.cumsum(blocklengths)))
    output = np.zeros((offsets[-1], offsets[-1]))
    for i in range(len(blocklengths)):
        for j in range(len(blocklengths)):
            value = M[i][j]
            if isinstance(value, int) and value == 0:
                continue
            output[offsets[i]:offsets[i + 1], offsets[j]:offsets[j + 1]] = value
    return output


@dataclass(frozen=True, eq=False)
class ClosedLoopSet:
    """Per-outcome closed-loop matrices of one strategy."""
    matrices: Mapping[str, np.ndarray]
    strategy: Strategy = Strategy.KILL
    mode: Optional[ActuatorMode] = None

    def __post_init__(self):
        strategy = Strategy(self.strategy)
        expected = {s.value for s in alphabet(strategy)}
        matrices = {str(k): np.asarray(v, dtype=float) for k, v in self.matrices.items()}
        if set(matrices) != expected:
            raise AlphabetMismatch(
                f"Closed-loop keys {sorted(matrices)} do not match the {strategy.value} alphabet"
            )
        shapes = {M.shape for M in matrices.values()}
        if len(shapes) != 1:
            raise DimensionMismatch(f"Closed-loop matrices disagree in shape: {sorted(shapes)}")
        shape = shapes.pop()
        if len(shape) != 2 or shape[0] != shape[1]:
            raise NonSquare(f"Closed-loop matrices must be square, got {shape}")
        for M in matrices.values():
            M.setflags(write=False)
        object.__setattr__(self, "strategy", strategy)
        object.__setattr__(self, "matrices", matrices)
        if self.mode is not None:
            object.__setattr__(self, "mode", ActuatorMode(self.mode))

    @classmethod
    def from_matrices(cls, matrices: Mapping[str, object], strategy: Strategy = Strategy.KILL) -> "ClosedLoopSet":
        """Arbitrary switching set over a strategy alphabet; scalars become 1x1."""
        return cls({k: np.atleast_2d(np.asarray(v, dtype=float)) for k, v in matrices.items()}, strategy)

    @property
    def dimension(self) -> int:
        return next(iter(self.matrices.values())).shape[0]

    @property
    def alphabet(self):
        return tuple(s.value for s in alphabet(self.strategy))

    def __getitem__(self, symbol: str) -> np.ndarray:
        try:
            return self.matrices[str(symbol)]
        except KeyError:
            raise AlphabetMismatch(f"Symbol {symbol!r} is not in the {self.strategy.value} alphabet")

    def product(self, seq: SequenceLike) -> np.ndarray:
        """A_alpha = A_{a_N} ... A_{a_1}; the identity for the empty sequence."""
        result = np.eye(self.dimension)
        for symbol in as_sequence(seq):
            if symbol not in self.matrices:
                raise AlphabetMismatch(f"Symbol {symbol!r} is not in the {self.strategy.value} alphabet")
            result = self.matrices[symbol] @ result
        return result


def closed_loop_set(
    plant: StateSpace,
    ctrl: StateSpace,
    strategy: Strategy,
    mode: ActuatorMode,
) -> ClosedLoopSet:
    """Assemble the closed-loop matrix of every outcome.

    Args:
        plant: Plant (A_p, B_p, C_p, D_p)
        ctrl: Controller (A_c, B_c, C_c, D_c) driven by e = -y
        strategy: Deadline-miss strategy
        mode: Actuator mode selecting Delta in the miss matrix. Under Kill,
            Zero resets the command on a miss and Hold keeps it; Skip-Next
            uses the reverse pairing.

    Returns:
        ClosedLoopSet: One matrix per outcome of the strategy alphabet
    """
    strategy, mode = Strategy(strategy), ActuatorMode(mode)
    if ctrl.num_inputs != plant.num_outputs:
        raise DimensionMismatch(
            f"Controller takes {ctrl.num_inputs} inputs but the plant has {plant.num_outputs} outputs"
        )
    if ctrl.num_outputs != plant.num_inputs:
        raise DimensionMismatch(
            f"Controller emits {ctrl.num_outputs} commands but the plant takes {plant.num_inputs} inputs"
        )

    Ap, Bp, Cp, Dp = plant.A, plant.B, plant.C, plant.D
    Ac, Bc, Cc, Dc = ctrl.A, ctrl.B, ctrl.C, ctrl.D
    n, s, r = plant.num_states, ctrl.num_states, plant.num_inputs
    Is, Ir, In = np.eye(s), np.eye(r), np.eye(n)
    held = mode is ActuatorMode.HOLD
    if strategy is Strategy.SKIP_NEXT:
        # Skip-Next pairs Zero with Delta = I and Hold with Delta = 0
        held = not held
    Delta = Ir if held else 0

    if strategy is Strategy.KILL:
        sizes = [n, s, r]
        matrices = {
            Outcome.HIT.value: blockmatrix([
                [Ap, 0, Bp],
                [-Bc @ Cp, Ac, -Bc @ Dp],
                [-Dc @ Cp, Cc, -Dc @ Dp],
            ], sizes),
            Outcome.MISS.value: blockmatrix([
                [Ap, 0, Bp],
                [0, Is, 0],
                [0, 0, Delta],
            ], sizes),
        }
    else:
        sizes = [n, s, r, n, r]
        matrices = {
            Outcome.HIT.value: blockmatrix([
                [Ap, 0, Bp, 0, 0],
                [-Bc @ Cp, Ac, -Bc @ Dp, 0, 0],
                [-Dc @ Cp, Cc, -Dc @ Dp, 0, 0],
                [Ap, 0, Bp, 0, 0],
                [-Dc @ Cp, Cc, -Dc @ Dp, 0, 0],
            ], sizes),
            Outcome.MISS.value: blockmatrix([
                [Ap, 0, Bp, 0, 0],
                [0, Is, 0, 0, 0],
                [0, 0, Delta, 0, 0],
                [0, 0, 0, In, 0],
                [0, 0, 0, 0, Ir],
            ], sizes),
            Outcome.RECOVERY.value: blockmatrix([
                [Ap, 0, Bp, 0, 0],
                [0, Ac, 0, -Bc @ Cp, -Bc @ Dp],
                [0, Cc, 0, -Dc @ Cp, -Dc @ Dp],
                [Ap, 0, Bp, 0, 0],
                [0, Cc, 0, -Dc @ Cp, -Dc @ Dp],
            ], sizes),
        }

    cl = ClosedLoopSet(matrices, strategy, mode)
    logger.debug(f"Closed loop {strategy.value}/{mode.value}: dimension {cl.dimension}")
    return cl


def simulate(
    cl: ClosedLoopSet,
    seq: SequenceLike,
    x0,
    unchecked: bool = False,
) -> np.ndarray:
    """Trajectory x~_0 .. x~_N with x~_{t+1} = A_{a_t} x~_t, one row per step.

    Raises:
        DimensionMismatch: if ``x0`` does not have the closed-loop dimension
        MalformedSequence: if ``seq`` leaves the strategy alphabet, or violates
            the successor relation when checked
    """
    x = np.asarray(x0, dtype=float).reshape(-1)
    if x.shape[0] != cl.dimension:
        raise DimensionMismatch(f"x0 has {x.shape[0]} entries, the closed loop has {cl.dimension}")
    text = check_alphabet(seq, cl.strategy) if unchecked else validate_sequence(seq, cl.strategy)

    trajectory = np.empty((len(text) + 1, cl.dimension))
    trajectory[0] = x
    for t, symbol in enumerate(text):
        x = cl[symbol] @ x
        trajectory[t + 1] = x
    return trajectory
