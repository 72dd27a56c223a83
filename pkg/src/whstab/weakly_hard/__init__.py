"""Weakly-hard constraints, outcome strings and their satisfaction languages"""

from .outcomes import (
    Outcome,
    SequenceLike,
    alphabet,
    is_completion,
    successors,
    as_sequence,
    check_alphabet,
    validate_sequence,
)
from .constraints import (
    ConstraintKind,
    Constraint,
    ConstraintSet,
    as_constraint,
    normalize_row_constraint,
)
from .satisfaction import satisfies, satisfies_all, enumerate_satisfaction_set
from .dominance import Relation, dominates, dominant_set

__all__ = [
    "Outcome",
    "SequenceLike",
    "alphabet",
    "is_completion",
    "successors",
    "as_sequence",
    "check_alphabet",
    "validate_sequence",
    "ConstraintKind",
    "Constraint",
    "ConstraintSet",
    "as_constraint",
    "normalize_row_constraint",
    "satisfies",
    "satisfies_all",
    "enumerate_satisfaction_set",
    "Relation",
    "dominates",
    "dominant_set",
]
