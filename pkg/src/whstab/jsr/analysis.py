"""
End-to-end stability analysis of a plant/controller loop under weakly-hard constraints.
"""
import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

from ..automaton.graph import build_graph
from ..automaton.minimize import minimize
from ..config.defaults import DEFAULT_JSR_PARAMS, ActuatorMode, JsrParams, Strategy
from ..dynamics.closed_loop import ClosedLoopSet, closed_loop_set
from ..dynamics.state_space import StateSpace
from ..errors import StrategyMismatch
from ..weakly_hard.constraints import ConstraintSet
from ..weakly_hard.dominance import dominant_set
from .bounds import Bounds, lower_bound_cycles
from .gripenberg import gripenberg

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    """Switching-stability verdicts"""
    STABLE = "stable"              # ub < 1
    UNSTABLE = "unstable"          # lb > 1
    INCONCLUSIVE = "inconclusive"  # the bracket contains 1


def verdict_for(bounds: Bounds) -> Verdict:
    if bounds.ub < 1.0:
        return Verdict.STABLE
    if bounds.lb > 1.0:
        return Verdict.UNSTABLE
    return Verdict.INCONCLUSIVE


def is_borderline(bounds: Bounds, delta: float) -> bool:
    """True when either end of the bracket lies within delta of 1."""
    return abs(bounds.lb - 1.0) < delta or abs(bounds.ub - 1.0) < delta


@dataclass
class StabilityReport:
    """Outcome of one analysis run."""
    verdict: Verdict
    bounds: Bounds
    constraints: List[str]
    dominant: List[str]
    strategy: Strategy
    mode: Optional[ActuatorMode]
    graph_nodes: int
    graph_edges: int
    walltime_ms: float = 0.0
    borderline: bool = False
    inferred: bool = False
    inferred_from: Optional[str] = None
    params: Dict[str, Any] = field(default_factory=dict)

    @property
    def summary(self) -> str:
        if self.inferred:
            bracket = f"rho <= {self.bounds.ub:.4f}"
        else:
            bracket = f"rho in [{self.bounds.lb:.4f}, {self.bounds.ub:.4f}]"
        text = (
            f"{self.verdict.value}: {bracket} "
            f"for {', '.join(self.constraints)} ({self.strategy.value}"
            f"{'/' + self.mode.value if self.mode else ''})"
        )
        if self.borderline:
            text += " [borderline]"
        if self.bounds.budget_exhausted:
            text += " [budget exhausted]"
        if self.inferred:
            text += f" [inferred from {self.inferred_from}]"
        return text

    def to_dict(self) -> Dict[str, Any]:
        bounds = self.bounds.to_dict()
        if self.inferred:
            # only the upper bound carries over from the dominating row
            bounds["lb"] = None
        return {
            "verdict": self.verdict.value,
            "bounds": bounds,
            "constraints": list(self.constraints),
            "dominant": list(self.dominant),
            "strategy": self.strategy.value,
            "mode": self.mode.value if self.mode else None,
            "graph": {"nodes": self.graph_nodes, "edges": self.graph_edges},
            "walltime_ms": self.walltime_ms,
            "borderline": self.borderline,
            "inferred": self.inferred,
            "inferred_from": self.inferred_from,
            "params": dict(self.params),
            "summary": self.summary,
        }


def analyze_closed_loop(
    cl: ClosedLoopSet,
    cs: ConstraintSet,
    params: JsrParams = DEFAULT_JSR_PARAMS,
    progress: bool = False,
) -> StabilityReport:
    """Run the bracketing pipeline on an already assembled closed loop."""
    if cs.strategy is not cl.strategy:
        raise StrategyMismatch(
            f"Constraints use {cs.strategy.value} but the closed loop was built for {cl.strategy.value}"
        )
    start = time.perf_counter()

    try:
        reduced = dominant_set(cs)
        graph = minimize(build_graph(reduced))
    except Exception as e:
        logger.error(f"Failed to build the constraint graph for {cs}: {str(e)}")
        raise
    logger.info(f"Dominant set {reduced}: minimized graph has {len(graph)} nodes")

    try:
        seed = lower_bound_cycles(graph, cl, params.cycle_len)
        bounds = gripenberg(
            graph,
            cl,
            delta=params.delta,
            max_depth=params.max_depth,
            budget=params.budget,
            lb=seed.lb,
            lb_witness=seed.lb_witness,
            norms=params.norms,
            workers=params.workers,
            progress=progress,
        )
    except Exception as e:
        logger.error(f"Failed to bound the JSR for {cs}: {str(e)}")
        raise
    bounds.params = params.to_dict()

    verdict = verdict_for(bounds)
    borderline = is_borderline(bounds, params.delta)
    if borderline:
        logger.warning(f"Borderline bracket [{bounds.lb:.6f}, {bounds.ub:.6f}] for {cs}")

    report = StabilityReport(
        verdict=verdict,
        bounds=bounds,
        constraints=[str(c) for c in cs],
        dominant=[str(c) for c in reduced],
        strategy=cs.strategy,
        mode=cl.mode,
        graph_nodes=len(graph),
        graph_edges=len(graph.edges),
        walltime_ms=(time.perf_counter() - start) * 1000.0,
        borderline=borderline,
        params=params.to_dict(),
    )
    logger.info(report.summary)
    return report


def analyze(
    plant: StateSpace,
    ctrl: StateSpace,
    strategy: Strategy,
    mode: ActuatorMode,
    cs: ConstraintSet,
    params: JsrParams = DEFAULT_JSR_PARAMS,
    progress: bool = False,
) -> StabilityReport:
    """Decide switching stability of the loop under ``cs``.

    Pipeline: dominant set, constraint graph, minimization, closed-loop
    matrices, closed-walk lower bound, branch-and-bound bracket, verdict.
    """
    strategy = Strategy(strategy)
    if cs.strategy is not strategy:
        raise StrategyMismatch(f"Constraint set uses {cs.strategy.value}, analysis asked for {strategy.value}")
    try:
        cl = closed_loop_set(plant, ctrl, strategy, mode)
    except Exception as e:
        logger.error(f"Failed to assemble the closed loop: {str(e)}")
        raise
    return analyze_closed_loop(cl, cs, params, progress)
