"""Command-line launcher."""

import argparse
import logging
import sys
from typing import List, Optional, Sequence

import numpy as np

from .automaton.export import export_dot, graph_to_dict
from .automaton.graph import build_graph, is_feasible
from .automaton.minimize import minimize
from .config import settings
from .config.analysis import AnalysisConfig, dump_config, load_config, parse_config
from .config.defaults import (
    EXIT_EMPTY_LANGUAGE,
    EXIT_INCONCLUSIVE,
    EXIT_INFEASIBLE,
    EXIT_OK,
    EXIT_PARSE_ERROR,
    EXIT_UNSTABLE,
    ActuatorMode,
    OutputFormat,
    Strategy,
)
from .config.systems import BUILTIN_SYSTEMS
from .dynamics.closed_loop import closed_loop_set, simulate
from .errors import ConfigError, EmptyLanguage, WhStabError
from .jsr.analysis import StabilityReport, Verdict, analyze, analyze_closed_loop
from .jsr.bounds import Bounds
from .reports import json_document, reports_to_csv, reports_to_json, trajectory_to_csv, write_output
from .weakly_hard.constraints import Constraint, ConstraintSet
from .weakly_hard.dominance import dominant_set, dominates
from .weakly_hard.outcomes import check_alphabet

logger = logging.getLogger(__name__)

VERDICT_EXIT_CODES = {
    Verdict.STABLE: EXIT_OK,
    Verdict.UNSTABLE: EXIT_UNSTABLE,
    Verdict.INCONCLUSIVE: EXIT_INCONCLUSIVE,
}


def configure_logging(verbosity: int = 0) -> None:
    """-v raises to INFO, -vv to DEBUG; otherwise WHSTAB_LOG_LEVEL applies."""
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = getattr(logging, settings.LOG_LEVEL, logging.WARNING)
    logging.basicConfig(level=level, format=settings.LOG_FORMAT, stream=sys.stderr, force=True)


def resolve_config(args: argparse.Namespace, require_system: bool = True) -> Optional[AnalysisConfig]:
    """Merge --config/--system with the command-line overrides.

    Returns None when no system is given and ``require_system`` is False.
    """
    if args.config:
        data = load_config(args.config).model_dump(mode="json")
    elif args.system:
        plant, ctrl = BUILTIN_SYSTEMS[args.system]
        data = {"plant": plant, "controller": ctrl, "constraints": []}
    elif require_system:
        raise ConfigError("A system is required: pass --config PATH or --system p1c1|p2c2")
    else:
        return None

    if args.strategy:
        data["strategy"] = args.strategy
    if args.actuator:
        data["actuator"] = args.actuator
    if args.constraint:
        data["constraints"] = list(args.constraint)
    if not data.get("constraints") and getattr(args, "command", None) == "sweep":
        # the grid supplies the constraints
        data["constraints"] = ["anymiss(0,1)"]
    jsr = data.setdefault("jsr", {})
    if getattr(args, "delta", None) is not None:
        jsr["delta"] = args.delta
    if getattr(args, "depth", None) is not None:
        jsr["max_depth"] = args.depth
    if getattr(args, "budget", None) is not None:
        jsr["budget"] = args.budget
    if getattr(args, "workers", None) is not None:
        jsr["workers"] = args.workers
    return parse_config(data)


def resolve_constraints(args: argparse.Namespace) -> ConstraintSet:
    cfg = resolve_config(args, require_system=False)
    if cfg is not None:
        return cfg.constraint_set()
    if not args.constraint:
        raise ConfigError("At least one --constraint is required")
    return ConstraintSet.parse(args.constraint, Strategy(args.strategy or Strategy.KILL))


def cmd_fsm(args: argparse.Namespace) -> int:
    """Emit the (minimized) constraint graph of the dominant set."""
    cs = resolve_constraints(args)
    graph = build_graph(dominant_set(cs))
    if not args.raw:
        graph = minimize(graph)

    fmt = OutputFormat(args.format or OutputFormat.DOT)
    if fmt is OutputFormat.DOT:
        text = export_dot(graph)
    elif fmt is OutputFormat.JSON:
        text = json_document(graph_to_dict(graph))
    else:
        raise ConfigError("The fsm command writes dot or json")
    write_output(text, args.output)
    return EXIT_OK


def _write_reports(reports: List[StabilityReport], fmt: OutputFormat, output: Optional[str]) -> None:
    if fmt is OutputFormat.CSV:
        text = reports_to_csv(reports)
    elif fmt is OutputFormat.JSON:
        text = reports_to_json(reports[0] if len(reports) == 1 else reports)
    else:
        raise ConfigError("Stability reports are written as json or csv")
    write_output(text, output)


def cmd_stability(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    report = analyze(
        cfg.plant_system(),
        cfg.controller_system(),
        cfg.strategy,
        cfg.actuator,
        cfg.constraint_set(),
        cfg.jsr_params(),
        progress=args.progress,
    )
    _write_reports([report], OutputFormat(args.format or cfg.format), args.output)
    print(report.summary, file=sys.stderr)
    return VERDICT_EXIT_CODES[report.verdict]


def cmd_dominance(args: argparse.Namespace) -> int:
    first = resolve_constraints(args)
    if not args.against:
        raise ConfigError("The dominance command needs --against")
    second = ConstraintSet.parse(args.against, Strategy(args.against_strategy or first.strategy))
    relation = dominates(first, second)
    write_output(relation.value + "\n", args.output)
    return EXIT_OK


def _parse_vector(text: str) -> np.ndarray:
    try:
        return np.array([float(v) for v in text.replace(";", ",").split(",") if v.strip()])
    except ValueError:
        raise ConfigError(f"Cannot parse vector {text!r}")


def cmd_simulate(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    cs = cfg.constraint_set()
    seq = check_alphabet(args.sequence or "", cfg.strategy)
    if args.steps is not None:
        pattern = seq or "H"
        seq = (pattern * (args.steps // len(pattern) + 1))[:args.steps]

    if not args.unchecked:
        graph = minimize(build_graph(dominant_set(cs)))
        if not is_feasible(graph, seq):
            logger.error(f"Sequence {seq} is infeasible under {cs}")
            return EXIT_INFEASIBLE

    cl = closed_loop_set(cfg.plant_system(), cfg.controller_system(), cfg.strategy, cfg.actuator)
    x0 = _parse_vector(args.x0) if args.x0 else np.ones(cl.dimension)
    trajectory = simulate(cl, seq, x0, unchecked=args.unchecked)
    write_output(trajectory_to_csv(trajectory, seq), args.output)
    return EXIT_OK


def _inferred_report(source: StabilityReport, constraint: Constraint, strategy: Strategy, mode: ActuatorMode) -> StabilityReport:
    """A Stable row implied by a stable row with the same m and a smaller k."""
    return StabilityReport(
        verdict=Verdict.STABLE,
        bounds=Bounds(ub=source.bounds.ub, params=dict(source.bounds.params), depth=source.bounds.depth),
        constraints=[str(constraint)],
        dominant=[str(constraint)],
        strategy=strategy,
        mode=mode,
        graph_nodes=0,
        graph_edges=0,
        inferred=True,
        inferred_from=source.constraints[0],
        params=dict(source.params),
    )


def cmd_sweep(args: argparse.Namespace) -> int:
    """Analyze a grid of AnyMiss(m,k) constraints, inferring rows monotone in k."""
    cfg = resolve_config(args)
    params = cfg.jsr_params()
    strategies = [Strategy(s) for s in (args.strategies or [cfg.strategy.value])]
    modes = [ActuatorMode(a) for a in (args.actuators or [cfg.actuator.value])]

    reports: List[StabilityReport] = []
    for strategy in strategies:
        for mode in modes:
            cl = closed_loop_set(cfg.plant_system(), cfg.controller_system(), strategy, mode)
            for m in args.m:
                stable_row: Optional[StabilityReport] = None
                for k in sorted(args.k):
                    if m > k:
                        logger.debug(f"Skipping ({m},{k}): m exceeds k")
                        continue
                    constraint = Constraint.any_miss(m, k)
                    if stable_row is not None:
                        reports.append(_inferred_report(stable_row, constraint, strategy, mode))
                        continue
                    report = analyze_closed_loop(cl, ConstraintSet((constraint,), strategy), params, args.progress)
                    reports.append(report)
                    if report.verdict is Verdict.STABLE:
                        stable_row = report

    _write_reports(reports, OutputFormat(args.format or OutputFormat.CSV), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="whstab",
        description="Switching stability of control loops under weakly-hard deadline constraints",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON analysis configuration")
    common.add_argument("--system", choices=sorted(BUILTIN_SYSTEMS), help="Built-in plant/controller pair")
    common.add_argument("--constraint", action="append", help="Constraint text, e.g. anymiss(1,3) (repeatable)")
    common.add_argument("--strategy", choices=[s.value for s in Strategy], help="Deadline-miss strategy")
    common.add_argument("--actuator", choices=[a.value for a in ActuatorMode], help="Actuation on a miss")
    common.add_argument("--format", choices=[f.value for f in OutputFormat], help="Output format")
    common.add_argument("--output", help="Write to this file instead of stdout")
    common.add_argument("--dump-config", action="store_true", help="Print the effective configuration and exit")
    common.add_argument("--progress", action="store_true", help="Show progress bars")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")

    jsr = argparse.ArgumentParser(add_help=False)
    jsr.add_argument("--delta", type=float, help="Target bracket width")
    jsr.add_argument("--depth", type=int, help="Largest walk length explored")
    jsr.add_argument("--budget", type=int, help="Largest number of walks explored")
    jsr.add_argument("--workers", type=int, help="Worker threads (capped by WHSTAB_THREADS)")

    sub = parser.add_subparsers(dest="command", required=True)

    fsm = sub.add_parser("fsm", parents=[common], help="Render the constraint graph")
    fsm.add_argument("--raw", action="store_true", help="Skip minimization")
    fsm.set_defaults(handler=cmd_fsm)

    stability = sub.add_parser("stability", parents=[common, jsr], help="Bracket the JSR and decide stability")
    stability.set_defaults(handler=cmd_stability)

    dominance = sub.add_parser("dominance", parents=[common], help="Compare two constraint sets")
    dominance.add_argument("--against", action="append", help="Constraint of the second set (repeatable)")
    dominance.add_argument(
        "--against-strategy",
        choices=[s.value for s in Strategy],
        help="Strategy of the second set (default: the first set's)",
    )
    dominance.set_defaults(handler=cmd_dominance)

    sim = sub.add_parser("simulate", parents=[common], help="Simulate the closed loop along an outcome sequence")
    sim.add_argument("--sequence", help="Outcome string such as HMHH")
    sim.add_argument("--x0", help="Initial closed-loop state, comma separated (default all ones)")
    sim.add_argument("--steps", type=int, help="Repeat the sequence up to this many steps")
    sim.add_argument("--unchecked", action="store_true", help="Skip the feasibility check")
    sim.set_defaults(handler=cmd_simulate)

    sweep = sub.add_parser("sweep", parents=[common, jsr], help="Analyze a grid of anymiss(m,k) constraints")
    sweep.add_argument("--m", type=int, nargs="+", default=[1], help="Miss bounds")
    sweep.add_argument("--k", type=int, nargs="+", default=[2, 3, 4, 5], help="Window sizes")
    sweep.add_argument("--strategies", nargs="+", choices=[s.value for s in Strategy])
    sweep.add_argument("--actuators", nargs="+", choices=[a.value for a in ActuatorMode])
    sweep.set_defaults(handler=cmd_sweep)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)

    try:
        if args.dump_config:
            write_output(dump_config(resolve_config(args)), args.output)
            return EXIT_OK
        return args.handler(args)
    except EmptyLanguage as e:
        logger.error(str(e))
        return EXIT_EMPTY_LANGUAGE
    except WhStabError as e:
        logger.error(str(e))
        return EXIT_PARSE_ERROR


if __name__ == "__main__":
    sys.exit(main())
