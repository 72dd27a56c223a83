"""
Interval outcomes, strategy alphabets and the successor relation.

Outcome strings are plain ``str`` objects over the characters ``H``, ``M``
and ``R``; every public function accepts either such a string or an
iterable of :class:`Outcome` members.
"""
from enum import Enum
from typing import FrozenSet, Iterable, Tuple, Union

from ..config.defaults import Strategy
from ..errors import MalformedSequence


class Outcome(str, Enum):
    """Possible outcomes of one activation interval"""
    HIT = "H"       # A job was released and completed in the interval
    MISS = "M"      # No job completed in the interval
    RECOVERY = "R"  # No job released, a late one completed

    def __str__(self) -> str:
        return self.value


SequenceLike = Union[str, Iterable[Outcome]]

_ALPHABETS = {
    Strategy.KILL: (Outcome.HIT, Outcome.MISS),
    Strategy.SKIP_NEXT: (Outcome.HIT, Outcome.MISS, Outcome.RECOVERY),
}

# Character order for canonical sorting
OUTCOME_ORDER = {Outcome.HIT: 0, Outcome.MISS: 1, Outcome.RECOVERY: 2}


def alphabet(strategy: Strategy) -> Tuple[Outcome, ...]:
    """Outcome alphabet of a strategy, in H, M, R order."""
    return _ALPHABETS[Strategy(strategy)]


def is_completion(symbol: str) -> bool:
    """Hit and Recovery both deliver a fresh control command."""
    return symbol in (Outcome.HIT.value, Outcome.RECOVERY.value)


def successors(last: Outcome, strategy: Strategy) -> FrozenSet[Outcome]:
    """Outcomes that may follow ``last`` under ``strategy``."""
    last = Outcome(last)
    if Strategy(strategy) is Strategy.KILL:
        return frozenset((Outcome.HIT, Outcome.MISS))
    if last is Outcome.MISS:
        # The late job still runs, so no fresh release can hit
        return frozenset((Outcome.MISS, Outcome.RECOVERY))
    return frozenset((Outcome.HIT, Outcome.MISS))


def as_sequence(seq: SequenceLike) -> str:
    """Normalize an outcome string; separators and case are ignored."""
    if isinstance(seq, str):
        text = "".join(ch for ch in seq.upper() if not ch.isspace() and ch not in ",;-")
    else:
        text = "".join(Outcome(s).value for s in seq)
    for ch in text:
        if ch not in "HMR":
            raise MalformedSequence(f"Unknown outcome character {ch!r} in {text!r}")
    return text


def check_alphabet(seq: SequenceLike, strategy: Strategy) -> str:
    """Normalize ``seq`` and reject outcomes outside the strategy alphabet."""
    text = as_sequence(seq)
    allowed = {s.value for s in alphabet(strategy)}
    for i, ch in enumerate(text):
        if ch not in allowed:
            raise MalformedSequence(
                f"Outcome {ch} at position {i + 1} is not in the {Strategy(strategy).value} alphabet"
            )
    return text


def validate_sequence(seq: SequenceLike, strategy: Strategy) -> str:
    """Check Rule 1 and the successor relation; return the normalized string."""
    text = check_alphabet(seq, strategy)
    for i, ch in enumerate(text):
        if i == 0:
            # Rule 1 admits a leading Recovery for arbitrary slices
            continue
        if Outcome(ch) not in successors(Outcome(text[i - 1]), strategy):
            raise MalformedSequence(
                f"Outcome {ch} at position {i + 1} cannot follow {text[i - 1]} "
                f"under {Strategy(strategy).value}"
            )
    return text
