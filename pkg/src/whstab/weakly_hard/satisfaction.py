"""
Satisfaction of outcome strings under the ideal-startup convention.

Every string is read as ``H^inf . seq``: windows end at positions 1..N of
``seq`` and reach back into an infinite prefix of hits.
"""
import logging
from typing import FrozenSet, Optional

from ..config import settings
from ..config.defaults import Strategy
from ..errors import CapExceeded
from .constraints import Constraint, ConstraintSet, as_constraint
from .outcomes import Outcome, SequenceLike, alphabet, successors, validate_sequence

logger = logging.getLogger(__name__)


def satisfies(seq: SequenceLike, c: Constraint, strategy: Strategy) -> bool:
    """True iff every window of ``H^inf . seq`` ending inside ``seq`` meets ``c``.

    Raises:
        MalformedSequence: if ``seq`` violates Rule 1 or the successor relation
    """
    text = validate_sequence(seq, strategy)
    c = as_constraint(c)
    k = c.effective_window
    padded = Outcome.HIT.value * (k - 1) + text
    return all(c.window_ok(padded[i:i + k]) for i in range(len(text)))


def satisfies_all(seq: SequenceLike, cs: ConstraintSet) -> bool:
    """Intersection semantics over a constraint set."""
    text = validate_sequence(seq, cs.strategy)
    return all(satisfies(text, c, cs.strategy) for c in cs)


def enumerate_satisfaction_set(
    cs: ConstraintSet,
    N: int,
    cap: Optional[int] = None,
) -> FrozenSet[str]:
    """All length-N strings reachable from ideal startup that satisfy every member.

    Args:
        cs: Constraint set, its strategy fixes the alphabet and successors
        N: String length
        cap: Largest admissible N (defaults to WHSTAB_ENUMERATION_CAP)

    Returns:
        FrozenSet[str]: The satisfaction set S_N
    """
    cap = settings.ENUMERATION_CAP if cap is None else cap
    if N < 0:
        raise ValueError(f"N must be nonnegative, got {N}")
    if N > cap:
        raise CapExceeded(f"Enumeration length {N} exceeds cap {cap}")

    history = Outcome.HIT.value * cs.window
    found = set()

    # Depth-first over partial strings, checking only the newest windows
    stack = [""]
    while stack:
        prefix = stack.pop()
        if len(prefix) == N:
            found.add(prefix)
            continue
        last = Outcome(prefix[-1]) if prefix else Outcome.HIT
        for symbol in alphabet(cs.strategy):
            if symbol not in successors(last, cs.strategy):
                continue
            candidate = prefix + symbol.value
            if cs.window_ok(history + candidate):
                stack.append(candidate)

    logger.debug(f"|S_{N}({cs})| = {len(found)}")
    return frozenset(found)
