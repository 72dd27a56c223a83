import itertools

import numpy as np
import pytest

from whstab.automaton import build_graph, minimize
from whstab.config.defaults import ActuatorMode, Strategy
from whstab.config.systems import C1, C2, P1, P2
from whstab.dynamics import ClosedLoopSet, StateSpace, closed_loop_set
from whstab.weakly_hard import ConstraintSet


def accepted_words(graph, length, start=None):
    """Every label string of the given length walked from ``start`` (default: initial)."""
    found = set()
    stack = [("", graph.initial if start is None else start)]
    while stack:
        prefix, node = stack.pop()
        if len(prefix) == length:
            found.add(prefix)
            continue
        for symbol in graph.alphabet:
            target = graph.successor(node, symbol)
            if target is not None:
                stack.append((prefix + symbol, target))
    return found


def walk_strings(graph, length):
    """Label strings of the given length that are walks from at least one node."""
    return {
        "".join(seq)
        for seq in itertools.product(graph.alphabet, repeat=length)
        if any(graph.walk(seq, start=v) is not None for v in range(len(graph)))
    }


@pytest.fixture
def kill_13():
    return ConstraintSet.of("anymiss(1,3)")


@pytest.fixture
def skip_13():
    return ConstraintSet.of("anymiss(1,3)", strategy=Strategy.SKIP_NEXT)


@pytest.fixture
def kill_13_graph(kill_13):
    return minimize(build_graph(kill_13))


@pytest.fixture
def skip_13_graph(skip_13):
    return minimize(build_graph(skip_13))


@pytest.fixture
def scalar_loop():
    """A_H = 0.5, A_M = 2 over the Kill alphabet."""
    return ClosedLoopSet.from_matrices({"H": 0.5, "M": 2.0}, Strategy.KILL)


@pytest.fixture
def random_kill_loop():
    rng = np.random.default_rng(7)
    return ClosedLoopSet.from_matrices(
        {"H": 0.6 * rng.normal(size=(2, 2)), "M": 1.1 * rng.normal(size=(2, 2))},
        Strategy.KILL,
    )


@pytest.fixture
def random_skip_loop():
    rng = np.random.default_rng(11)
    return ClosedLoopSet.from_matrices(
        {c: 0.8 * rng.normal(size=(3, 3)) for c in "HMR"},
        Strategy.SKIP_NEXT,
    )


@pytest.fixture
def p1c1():
    return StateSpace.from_dict(P1), StateSpace.from_dict(C1)


@pytest.fixture
def p2c2():
    return StateSpace.from_dict(P2), StateSpace.from_dict(C2)


@pytest.fixture
def p1c1_kill_zero(p1c1):
    plant, ctrl = p1c1
    return closed_loop_set(plant, ctrl, Strategy.KILL, ActuatorMode.ZERO)
