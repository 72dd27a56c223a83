"""
Weakly-hard constraints, constraint sets and per-window checks.
"""
import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Tuple, Union

from ..config.defaults import Strategy
from ..errors import ConstraintError
from .outcomes import Outcome, is_completion


class ConstraintKind(str, Enum):
    """The four weakly-hard constraint families"""
    ANY_MISS = "anymiss"  # at most m misses in any k consecutive intervals
    ANY_HIT = "anyhit"    # at least h completions in any k consecutive intervals
    ROW_MISS = "rowmiss"  # never more than m consecutive misses
    ROW_HIT = "rowhit"    # at least h consecutive completions in any k intervals


_TEXT_PATTERN = re.compile(
    r"^\s*(anymiss|anyhit|rowmiss|rowhit)\s*\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?\)\s*$",
    re.IGNORECASE,
)
_TUPLE_PATTERN = re.compile(r"^\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*$")
_ROW_PATTERN = re.compile(r"^\s*<\s*(\d+)\s*>\s*$")


@dataclass(frozen=True)
class Constraint:
    """A single weakly-hard constraint.

    ``bound`` is m for the miss kinds and h for the hit kinds; ``window`` is
    k and may be omitted only for RowMiss.
    """
    kind: ConstraintKind
    bound: int
    window: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", ConstraintKind(self.kind))
        if self.bound < 0:
            raise ConstraintError(f"{self.kind.value}: bound must be nonnegative, got {self.bound}")
        if self.window is None:
            if self.kind is not ConstraintKind.ROW_MISS:
                raise ConstraintError(f"{self.kind.value} requires a window size")
            return
        if self.window < 1:
            raise ConstraintError(f"{self.kind.value}: window must be at least 1, got {self.window}")
        if self.bound > self.window:
            raise ConstraintError(
                f"{self.kind.value}({self.bound},{self.window}): bound exceeds window"
            )

    @classmethod
    def any_miss(cls, m: int, k: int) -> "Constraint":
        return cls(ConstraintKind.ANY_MISS, m, k)

    @classmethod
    def any_hit(cls, h: int, k: int) -> "Constraint":
        return cls(ConstraintKind.ANY_HIT, h, k)

    @classmethod
    def row_miss(cls, m: int, k: Optional[int] = None) -> "Constraint":
        return cls(ConstraintKind.ROW_MISS, m, k)

    @classmethod
    def row_hit(cls, h: int, k: int) -> "Constraint":
        return cls(ConstraintKind.ROW_HIT, h, k)

    @classmethod
    def parse(cls, text: str) -> "Constraint":
        """Parse ``anymiss(m,k)``, ``anyhit(h,k)``, ``rowmiss(m[,k])``,
        ``rowhit(h,k)``, or the shorthands ``(m,k)`` and ``<m>``."""
        match = _TEXT_PATTERN.match(text)
        if match:
            kind = ConstraintKind(match.group(1).lower())
            window = int(match.group(3)) if match.group(3) is not None else None
            return cls(kind, int(match.group(2)), window)
        match = _TUPLE_PATTERN.match(text)
        if match:
            return cls.any_miss(int(match.group(1)), int(match.group(2)))
        match = _ROW_PATTERN.match(text)
        if match:
            return cls.row_miss(int(match.group(1)))
        raise ConstraintError(f"Cannot parse constraint {text!r}")

    def __str__(self) -> str:
        if self.window is None:
            return f"{self.kind.value}({self.bound})"
        return f"{self.kind.value}({self.bound},{self.window})"

    @property
    def effective_window(self) -> int:
        """Window length the constraint is checked over."""
        return normalize_row_constraint(self).window

    def window_ok(self, window: str) -> bool:
        """Check one window of outcomes (R counts as a completion)."""
        if self.kind is ConstraintKind.ANY_MISS:
            return window.count(Outcome.MISS.value) <= self.bound
        if self.kind is ConstraintKind.ANY_HIT:
            return sum(1 for ch in window if is_completion(ch)) >= self.bound
        if self.kind is ConstraintKind.ROW_MISS:
            return _longest_run(window, lambda ch: ch == Outcome.MISS.value) <= self.bound
        return _longest_run(window, is_completion) >= self.bound


def _longest_run(window: str, predicate) -> int:
    best = run = 0
    for ch in window:
        run = run + 1 if predicate(ch) else 0
        best = max(best, run)
    return best


def normalize_row_constraint(c: Constraint) -> Constraint:
    """Rewrite a RowMiss constraint as the AnyMiss with the same language.

    Other kinds are returned unchanged.
    """
    if c.kind is not ConstraintKind.ROW_MISS:
        return c
    if c.window is not None and c.window <= c.bound:
        # No window of length k can hold more than k <= m misses
        return Constraint.any_miss(c.window, c.window)
    return Constraint.any_miss(c.bound, c.bound + 1)


ConstraintLike = Union[Constraint, str]


def as_constraint(value: ConstraintLike) -> Constraint:
    if isinstance(value, Constraint):
        return value
    return Constraint.parse(value)


@dataclass(frozen=True)
class ConstraintSet:
    """An ordered, non-empty set of constraints under one strategy."""
    constraints: Tuple[Constraint, ...]
    strategy: Strategy = Strategy.KILL

    def __post_init__(self):
        items = tuple(as_constraint(c) for c in self.constraints)
        if not items:
            raise ConstraintError("A constraint set needs at least one constraint")
        object.__setattr__(self, "constraints", items)
        object.__setattr__(self, "strategy", Strategy(self.strategy))

    @classmethod
    def of(cls, *constraints: ConstraintLike, strategy: Strategy = Strategy.KILL) -> "ConstraintSet":
        return cls(tuple(constraints), strategy)

    @classmethod
    def parse(cls, texts: Iterable[str], strategy: Strategy = Strategy.KILL) -> "ConstraintSet":
        return cls(tuple(Constraint.parse(t) for t in texts), strategy)

    def __iter__(self):
        return iter(self.constraints)

    def __len__(self) -> int:
        return len(self.constraints)

    def __str__(self) -> str:
        body = ", ".join(str(c) for c in self.constraints)
        return f"{{{body}}}_{self.strategy.value}"

    @property
    def window(self) -> int:
        """k*, the longest effective window among the members."""
        return max(c.effective_window for c in self.constraints)

    def with_constraint(self, c: ConstraintLike) -> "ConstraintSet":
        return ConstraintSet(self.constraints + (as_constraint(c),), self.strategy)

    def window_ok(self, word: str) -> bool:
        """Check the windows of every member that end at the last character of ``word``.

        ``word`` must hold at least k* characters of history.
        """
        for c in self.constraints:
            k = c.effective_window
            if not c.window_ok(word[-k:]):
                return False
        return True
