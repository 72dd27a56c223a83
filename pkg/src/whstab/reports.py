"""
JSON and CSV renderings of stability reports and simulated trajectories.
"""
import csv
import io
import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Union

import numpy as np

from .config.defaults import CSV_COLUMNS
from .jsr.analysis import StabilityReport
from .weakly_hard.constraints import Constraint

logger = logging.getLogger(__name__)


def _parameters(report: StabilityReport) -> Dict[str, str]:
    """m and k columns; sets of several constraints join their values with ';'."""
    parsed = [Constraint.parse(text) for text in report.constraints]
    return {
        "m": ";".join(str(c.bound) for c in parsed),
        "k": ";".join(str(c.window) if c.window is not None else "" for c in parsed),
    }


def csv_row(report: StabilityReport) -> Dict[str, Any]:
    row = _parameters(report)
    row.update({
        "strategy": report.strategy.value,
        "mode": report.mode.value if report.mode else "",
        "lb": "" if report.inferred else f"{report.bounds.lb:.6f}",
        "ub": f"{report.bounds.ub:.6f}",
        "verdict": report.verdict.value,
        "depth": report.bounds.depth,
        "walltime_ms": f"{report.walltime_ms:.1f}",
    })
    return row


def reports_to_csv(reports: Iterable[StabilityReport]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for report in reports:
        writer.writerow(csv_row(report))
    return buffer.getvalue()


def reports_to_json(reports: Union[StabilityReport, List[StabilityReport]]) -> str:
    if isinstance(reports, StabilityReport):
        payload: Any = reports.to_dict()
    else:
        payload = [r.to_dict() for r in reports]
    return json_document(payload)


def trajectory_to_csv(trajectory: np.ndarray, seq: str) -> str:
    """One row per consumed outcome: step, outcome, then the state entries."""
    trajectory = np.atleast_2d(trajectory)
    d = trajectory.shape[1]
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["t", "outcome"] + [f"x{i}" for i in range(d)])
    for t, symbol in enumerate(seq, start=1):
        writer.writerow([t, symbol] + [repr(float(v)) for v in trajectory[t]])
    return buffer.getvalue()


def write_output(text: str, output: Optional[Union[str, Path]] = None) -> None:
    """Write ``text`` to ``output``, or to stdout when no path is given."""
    if output is None:
        print(text, end="")
        return
    path = Path(output)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as e:
        logger.error(f"Failed to write {path}: {str(e)}")
        raise
    logger.info(f"Wrote {path}")


def json_document(payload: Any) -> str:
    return json.dumps(payload, indent=2) + "\n"
