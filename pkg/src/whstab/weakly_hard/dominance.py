"""
Constraint dominance by safety-language inclusion, and dominant-set reduction.
"""
import logging
from enum import Enum
from typing import List, Union

from ..errors import StrategyMismatch
from .constraints import Constraint, ConstraintSet

logger = logging.getLogger(__name__)


class Relation(str, Enum):
    """How the language of a first constraint set relates to a second one"""
    STRICTLY_HARDER = "harder"
    EQUIVALENT = "equivalent"
    STRICTLY_EASIER = "easier"
    INCOMPARABLE = "incomparable"


def _as_set(value: Union[Constraint, ConstraintSet], strategy) -> ConstraintSet:
    if isinstance(value, ConstraintSet):
        return value
    return ConstraintSet((value,), strategy)


def _included(g1, g2) -> bool:
    """True iff every finite walk of ``g1`` from its initial node is a walk of ``g2``."""
    start = (g1.initial, g2.initial)
    seen = {start}
    queue = [start]
    while queue:
        a, b = queue.pop()
        for symbol in g1.alphabet:
            na = g1.successor(a, symbol)
            if na is None:
                continue
            nb = g2.successor(b, symbol)
            if nb is None:
                return False
            if (na, nb) not in seen:
                seen.add((na, nb))
                queue.append((na, nb))
    return True


def dominates(c1: ConstraintSet, c2: ConstraintSet) -> Relation:
    """Compare the satisfaction languages of two constraint sets.

    ``STRICTLY_HARDER`` means S(c1) is a proper subset of S(c2).

    Raises:
        StrategyMismatch: if the sets use different strategies
    """
    # Imported here: the automaton package builds on this package's types
    from ..automaton.graph import build_graph

    if not isinstance(c1, ConstraintSet) and not isinstance(c2, ConstraintSet):
        raise TypeError("At least one argument must be a ConstraintSet")
    strategy = c1.strategy if isinstance(c1, ConstraintSet) else c2.strategy
    c1, c2 = _as_set(c1, strategy), _as_set(c2, strategy)
    if c1.strategy is not c2.strategy:
        raise StrategyMismatch(
            f"Cannot compare {c1.strategy.value} constraints with {c2.strategy.value} constraints"
        )

    # Unpruned graphs accept exactly the prefix-closed satisfaction sets
    g1 = build_graph(c1, prune_dead_ends=False)
    g2 = build_graph(c2, prune_dead_ends=False)
    forward = _included(g1, g2)
    backward = _included(g2, g1)

    if forward and backward:
        return Relation.EQUIVALENT
    if forward:
        return Relation.STRICTLY_HARDER
    if backward:
        return Relation.STRICTLY_EASIER
    return Relation.INCOMPARABLE


def dominant_set(cs: ConstraintSet) -> ConstraintSet:
    """Drop every member whose language already contains another member's.

    Equivalent members keep the one earliest in input order; the output
    preserves input order.
    """
    kept: List[Constraint] = []
    for candidate in cs:
        single = ConstraintSet((candidate,), cs.strategy)
        redundant = False
        for member in kept:
            relation = dominates(ConstraintSet((member,), cs.strategy), single)
            if relation in (Relation.STRICTLY_HARDER, Relation.EQUIVALENT):
                redundant = True
                break
        if redundant:
            logger.debug(f"Dropping {candidate}: implied by a kept constraint")
            continue
        kept = [
            member for member in kept
            if dominates(single, ConstraintSet((member,), cs.strategy)) is not Relation.STRICTLY_HARDER
        ]
        kept.append(candidate)

    order = {c: i for i, c in reversed(list(enumerate(cs.constraints)))}
    kept.sort(key=lambda c: order[c])
    return ConstraintSet(tuple(kept), cs.strategy)
