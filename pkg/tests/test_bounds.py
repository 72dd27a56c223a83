import itertools
import math

import numpy as np
import pytest

from conftest import walk_strings
from whstab.automaton import build_graph, minimize
from whstab.config.defaults import ActuatorMode, JsrParams, Strategy
from whstab.dynamics import ClosedLoopSet, closed_loop_set
from whstab.errors import AlphabetMismatch, NonSquare, StrategyMismatch
from whstab.jsr import (
    Bounds,
    Verdict,
    analyze,
    analyze_closed_loop,
    canonical_rotation,
    gripenberg,
    is_borderline,
    lower_bound_cycles,
    spectral_radius,
    verdict_for,
    walk_norm_rate,
)
from whstab.weakly_hard import ConstraintSet, Relation, dominates, enumerate_satisfaction_set

SCALAR_RATE = 0.5 ** (1 / 3)


def brute_force_cycles(g, cl, max_len):
    best = 0.0
    for length in range(1, max_len + 1):
        for seq in itertools.product(g.alphabet, repeat=length):
            if any(g.closes_cycle(seq, v) for v in range(len(g))):
                best = max(best, spectral_radius(cl.product(seq)) ** (1 / length))
    return best


def test_spectral_radius_examples():
    assert spectral_radius([[0, 1], [0, 0]]) == 0.0
    assert spectral_radius([[0, -1], [1, 0]]) == pytest.approx(1.0)
    assert spectral_radius(np.diag([2.0, -3.0])) == pytest.approx(3.0)
    assert spectral_radius(0.5) == 0.5
    with pytest.raises(NonSquare):
        spectral_radius(np.ones((2, 3)))


def test_canonical_rotation():
    assert canonical_rotation("MHH") == "HHM"
    assert canonical_rotation("HMH") == "HHM"
    assert canonical_rotation("") == ""


def test_bounds_dict_round_trip():
    bounds = Bounds(lb=0.5, lb_witness="HHM", depth=3)
    data = bounds.to_dict()
    assert data["ub"] is None
    restored = Bounds.from_dict(data)
    assert math.isinf(restored.ub)
    assert restored.lb_witness == "HHM"
    assert Bounds(lb=0.4, ub=0.6).gap == pytest.approx(0.2)


def test_scalar_lower_bound(kill_13_graph, scalar_loop):
    bounds = lower_bound_cycles(kill_13_graph, scalar_loop, 6)
    assert bounds.lb == pytest.approx(SCALAR_RATE, abs=1e-4)
    assert bounds.lb_witness == "HHM"
    assert math.isinf(bounds.ub)
    with pytest.raises(ValueError):
        lower_bound_cycles(kill_13_graph, scalar_loop, 0)


def test_scalar_bracket(kill_13_graph, scalar_loop):
    seed = lower_bound_cycles(kill_13_graph, scalar_loop, 3)
    bounds = gripenberg(kill_13_graph, scalar_loop, delta=1e-4, lb=seed.lb, lb_witness=seed.lb_witness)
    assert bounds.lb == pytest.approx(0.7937, abs=1e-3)
    assert bounds.ub == pytest.approx(0.7937, abs=1e-3)
    assert bounds.lb <= bounds.ub
    assert not bounds.budget_exhausted
    assert bounds.norm == "spectral"
    assert bounds.lb_witness == "HHM"


def test_gripenberg_finds_lower_bound_on_its_own(kill_13_graph, scalar_loop):
    bounds = gripenberg(kill_13_graph, scalar_loop, delta=1e-3, norms=("spectral",))
    assert bounds.lb == pytest.approx(SCALAR_RATE, abs=1e-9)
    assert bounds.ub <= bounds.lb + 1e-3 + 1e-12


@pytest.mark.parametrize("graph, loop, max_len", [
    ("kill_13_graph", "random_kill_loop", 9),
    ("skip_13_graph", "random_skip_loop", 7),
])
def test_lower_bound_matches_brute_force(graph, loop, max_len, request):
    g = request.getfixturevalue(graph)
    cl = request.getfixturevalue(loop)
    assert lower_bound_cycles(g, cl, max_len).lb == pytest.approx(brute_force_cycles(g, cl, max_len), abs=1e-10)


def test_single_node_symmetric():
    A = np.array([[0.9, 0.2], [0.2, 0.5]])
    cl = ClosedLoopSet.from_matrices({"H": A, "M": 3 * np.eye(2)}, Strategy.KILL)
    g = minimize(build_graph(ConstraintSet.of("anymiss(0,1)")))
    rho = spectral_radius(A)
    assert lower_bound_cycles(g, cl, 4).lb == pytest.approx(rho)
    bounds = gripenberg(g, cl, delta=1e-3)
    assert bounds.lb == pytest.approx(rho)
    assert bounds.ub == pytest.approx(rho + 1e-3)
    assert bounds.depth == 1


@pytest.mark.parametrize("graph, loop", [
    ("kill_13_graph", "random_kill_loop"),
    ("skip_13_graph", "random_skip_loop"),
])
def test_bracket_contains_finite_horizon_rates(graph, loop, request):
    g = request.getfixturevalue(graph)
    cl = request.getfixturevalue(loop)
    lower = lower_bound_cycles(g, cl, 8).lb
    bounds = gripenberg(g, cl, delta=0.01, max_depth=14, lb=lower)
    assert bounds.lb >= lower
    assert bounds.lb <= bounds.ub
    for length in range(1, 7):
        # every horizon's worst feasible norm rate bounds the constrained JSR from above
        assert lower <= walk_norm_rate(cl, walk_strings(g, length)) + 1e-12


MONOTONE_POOL = [f"anymiss({m},{k})" for k in range(2, 6) for m in range(1, k)] + ["rowmiss(1)", "rowmiss(2)"]


@pytest.mark.parametrize("strategy, loop", [
    (Strategy.KILL, "random_kill_loop"),
    (Strategy.SKIP_NEXT, "random_skip_loop"),
])
def test_harder_constraints_have_smaller_finite_horizon_rates(strategy, loop, request):
    cl = request.getfixturevalue(loop)
    horizons = range(1, 6)
    sets = {text: ConstraintSet.of(text, strategy=strategy) for text in MONOTONE_POOL}
    rates = {
        text: [walk_norm_rate(cl, enumerate_satisfaction_set(cs, n)) for n in horizons]
        for text, cs in sets.items()
    }
    for a, b in itertools.product(MONOTONE_POOL, repeat=2):
        if dominates(sets[a], sets[b]) in (Relation.STRICTLY_HARDER, Relation.EQUIVALENT):
            assert all(x <= y + 1e-12 for x, y in zip(rates[a], rates[b])), (a, b)
    for a, b in itertools.combinations(MONOTONE_POOL, 2):
        joint = ConstraintSet.of(a, b, strategy=strategy)
        for i, n in enumerate(horizons):
            rate = walk_norm_rate(cl, enumerate_satisfaction_set(joint, n))
            assert rate <= min(rates[a][i], rates[b][i]) + 1e-12, (a, b, n)


def test_budget_exhaustion(kill_13_graph, scalar_loop):
    bounds = gripenberg(kill_13_graph, scalar_loop, delta=1e-6, max_depth=2, norms=("spectral",))
    assert bounds.budget_exhausted
    assert bounds.depth == 2
    assert bounds.ub == pytest.approx(1.0)
    assert bounds.ub >= SCALAR_RATE


def test_both_norm_passes_stay_valid(kill_13_graph, scalar_loop):
    bounds = gripenberg(kill_13_graph, scalar_loop, delta=1e-6, max_depth=2)
    assert bounds.budget_exhausted
    assert SCALAR_RATE - 1e-9 <= bounds.ub <= 1.0 + 1e-9


def test_gripenberg_rejects_bad_arguments(kill_13_graph, scalar_loop, random_skip_loop):
    with pytest.raises(ValueError):
        gripenberg(kill_13_graph, scalar_loop, delta=0)
    with pytest.raises(ValueError):
        gripenberg(kill_13_graph, scalar_loop, norms=("frobenius",))
    with pytest.raises(AlphabetMismatch):
        gripenberg(kill_13_graph, random_skip_loop)


def test_deterministic_across_worker_counts(kill_13_graph, random_kill_loop):
    runs = [
        gripenberg(kill_13_graph, random_kill_loop, delta=0.02, max_depth=12, workers=workers)
        for workers in (1, 4)
    ]
    assert runs[0].lb == runs[1].lb
    assert runs[0].ub == runs[1].ub
    assert runs[0].explored == runs[1].explored
    assert runs[0].lb_witness == runs[1].lb_witness


def test_lower_bound_shrinks_with_window(p1c1_kill_zero):
    lbs = []
    for k in range(2, 6):
        g = minimize(build_graph(ConstraintSet.of(f"anymiss(1,{k})")))
        lbs.append(lower_bound_cycles(g, p1c1_kill_zero, 8).lb)
    for looser, tighter in zip(lbs, lbs[1:]):
        assert tighter <= looser + 1e-9


def test_verdicts():
    assert verdict_for(Bounds(lb=0.5, ub=0.9)) is Verdict.STABLE
    assert verdict_for(Bounds(lb=1.1, ub=1.3)) is Verdict.UNSTABLE
    assert verdict_for(Bounds(lb=0.95, ub=1.05)) is Verdict.INCONCLUSIVE
    assert verdict_for(Bounds(lb=0.95)) is Verdict.INCONCLUSIVE
    assert is_borderline(Bounds(lb=0.995, ub=0.999), 0.01)
    assert not is_borderline(Bounds(lb=0.5, ub=0.6), 0.01)


def test_contractive_loop_is_stable():
    cl = ClosedLoopSet.from_matrices({"H": 0.5 * np.eye(2), "M": 0.5 * np.eye(2)}, Strategy.KILL)
    report = analyze_closed_loop(cl, ConstraintSet.of("anymiss(2,5)"), JsrParams(delta=0.01))
    assert report.verdict is Verdict.STABLE
    assert report.bounds.ub < 1
    assert report.dominant == ["anymiss(2,5)"]
    assert report.to_dict()["verdict"] == "stable"
    assert report.summary.startswith("stable")


def test_expanding_loop_is_unstable():
    cl = ClosedLoopSet.from_matrices({"H": 1.2, "M": 2.0}, Strategy.KILL)
    report = analyze_closed_loop(cl, ConstraintSet.of("anymiss(1,3)"), JsrParams(delta=0.01))
    assert report.verdict is Verdict.UNSTABLE
    assert report.bounds.lb > 1


def test_analyze_reduces_to_dominant_set(scalar_loop):
    cs = ConstraintSet.of("anymiss(1,2)", "anymiss(1,3)")
    report = analyze_closed_loop(scalar_loop, cs, JsrParams(delta=1e-3))
    assert report.constraints == ["anymiss(1,2)", "anymiss(1,3)"]
    assert report.dominant == ["anymiss(1,3)"]
    assert report.graph_nodes == 3
    assert report.bounds.lb == pytest.approx(SCALAR_RATE, abs=1e-6)


def test_analyze_strategy_mismatch(p1c1, scalar_loop):
    plant, ctrl = p1c1
    skip = ConstraintSet.of("anymiss(1,3)", strategy=Strategy.SKIP_NEXT)
    with pytest.raises(StrategyMismatch):
        analyze(plant, ctrl, Strategy.KILL, ActuatorMode.ZERO, skip)
    with pytest.raises(StrategyMismatch):
        analyze_closed_loop(scalar_loop, skip)


def test_stable_sub_constraint_is_never_unstable(scalar_loop):
    params = JsrParams(delta=1e-3)
    harder = analyze_closed_loop(scalar_loop, ConstraintSet.of("anymiss(1,4)"), params)
    looser = analyze_closed_loop(scalar_loop, ConstraintSet.of("anymiss(1,3)"), params)
    assert harder.verdict is Verdict.STABLE
    assert looser.verdict is not Verdict.UNSTABLE
    assert harder.bounds.lb <= looser.bounds.lb + 1e-9


@pytest.mark.slow
@pytest.mark.parametrize("constraint, expected", [
    ("anymiss(1,2)", 0.960),
    ("anymiss(1,3)", 0.920),
    ("anymiss(1,4)", 0.890),
    ("anymiss(2,3)", 0.983),
    ("anymiss(3,4)", 0.990),
])
def test_p1c1_kill_zero_lower_bounds(p1c1_kill_zero, constraint, expected):
    g = minimize(build_graph(ConstraintSet.of(constraint)))
    assert lower_bound_cycles(g, p1c1_kill_zero, 12).lb >= expected - 0.005


@pytest.mark.slow
@pytest.mark.parametrize("strategy", [Strategy.KILL, Strategy.SKIP_NEXT])
@pytest.mark.parametrize("mode", [ActuatorMode.ZERO, ActuatorMode.HOLD])
def test_p2c2_lower_bound(p2c2, strategy, mode):
    plant, ctrl = p2c2
    cl = closed_loop_set(plant, ctrl, strategy, mode)
    g = minimize(build_graph(ConstraintSet.of("anymiss(1,2)", strategy=strategy)))
    assert lower_bound_cycles(g, cl, 12).lb == pytest.approx(0.995, abs=0.002)


@pytest.mark.slow
def test_p1c1_skip_next_zero_is_certified_stable(p1c1):
    plant, ctrl = p1c1
    cs = ConstraintSet.of("anymiss(1,2)", strategy=Strategy.SKIP_NEXT)
    report = analyze(plant, ctrl, Strategy.SKIP_NEXT, ActuatorMode.ZERO, cs, JsrParams(delta=0.02))
    assert report.verdict is Verdict.STABLE
    assert report.bounds.ub < 1
    assert report.bounds.lb == pytest.approx(0.922, abs=0.005)


@pytest.mark.slow
def test_p1c1_kill_zero_23_is_inconclusive(p1c1):
    plant, ctrl = p1c1
    report = analyze(
        plant, ctrl, Strategy.KILL, ActuatorMode.ZERO, ConstraintSet.of("anymiss(2,3)"), JsrParams(delta=0.02)
    )
    assert report.verdict is Verdict.INCONCLUSIVE


# P1/C1 reference brackets: (lower bound, tightest known upper bound)
P1C1_BRACKETS = {
    (Strategy.KILL, ActuatorMode.ZERO): {
        (1, 2): (0.960, 1.070), (1, 3): (0.920, 0.995), (1, 4): (0.890, 0.945),
        (2, 3): (0.983, 1.124), (2, 4): (0.960, 1.079),
    },
    (Strategy.KILL, ActuatorMode.HOLD): {
        (1, 2): (0.926, 1.029), (1, 3): (0.894, 0.971), (1, 4): (0.894, 0.957),
        (2, 3): (0.956, 1.085), (2, 4): (0.927, 1.039),
    },
    (Strategy.SKIP_NEXT, ActuatorMode.ZERO): {
        (1, 2): (0.922, 0.924), (1, 3): (0.898, 0.974), (1, 4): (0.898, 0.963),
        (2, 3): (0.953, 1.034), (2, 4): (0.922, 1.033),
    },
    (Strategy.SKIP_NEXT, ActuatorMode.HOLD): {
        (1, 2): (0.958, 0.958), (1, 3): (0.917, 0.988), (1, 4): (0.890, 0.940),
        (2, 3): (0.982, 1.070), (2, 4): (0.958, 1.079),
    },
}


@pytest.mark.slow
@pytest.mark.parametrize("strategy, mode", list(P1C1_BRACKETS))
def test_p1c1_brackets_overlap_reference(p1c1, strategy, mode):
    plant, ctrl = p1c1
    params = JsrParams(delta=0.02, max_depth=20)
    for (m, k), (ref_lb, ref_ub) in P1C1_BRACKETS[(strategy, mode)].items():
        cs = ConstraintSet.of(f"anymiss({m},{k})", strategy=strategy)
        bounds = analyze(plant, ctrl, strategy, mode, cs, params).bounds
        assert bounds.lb <= ref_ub + 0.005, (m, k)
        assert bounds.ub >= ref_lb - 0.005, (m, k)


@pytest.mark.slow
@pytest.mark.parametrize("mode, expected", [(ActuatorMode.ZERO, 0.922), (ActuatorMode.HOLD, 0.958)])
def test_p1c1_skip_next_lower_bounds(p1c1, mode, expected):
    plant, ctrl = p1c1
    cl = closed_loop_set(plant, ctrl, Strategy.SKIP_NEXT, mode)
    g = minimize(build_graph(ConstraintSet.of("anymiss(1,2)", strategy=Strategy.SKIP_NEXT)))
    assert lower_bound_cycles(g, cl, 12).lb == pytest.approx(expected, abs=0.005)
