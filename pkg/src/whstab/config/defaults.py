"""Default configuration values for weakly-hard stability analysis"""

from enum import Enum
from dataclasses import dataclass, asdict, fields
from typing import Any, Dict, Optional, Tuple


class Strategy(str, Enum):
    """Deadline-miss handling strategies"""
    KILL = "kill"            # Late job is terminated at its deadline
    SKIP_NEXT = "skip-next"  # Late job continues, next release is skipped


class ActuatorMode(str, Enum):
    """What the actuator applies when no fresh command arrives"""
    ZERO = "zero"
    HOLD = "hold"


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"
    DOT = "dot"


# Norm passes used by the branch-and-bound upper bound
NORM_SPECTRAL = "spectral"
NORM_BALANCED = "balanced"
SUPPORTED_NORMS = (NORM_SPECTRAL, NORM_BALANCED)


@dataclass(frozen=True)
class JsrParams:
    """Parameters of the JSR bracketing pipeline"""
    delta: float = 0.01
    max_depth: int = 30
    budget: int = 5_000_000
    cycle_len: int = 12
    norms: Tuple[str, ...] = (NORM_SPECTRAL, NORM_BALANCED)
    workers: Optional[int] = None

    def __post_init__(self):
        if self.delta <= 0:
            raise ValueError(f"delta must be positive, got {self.delta}")
        if self.max_depth < 1 or self.budget < 1 or self.cycle_len < 1:
            raise ValueError("max_depth, budget and cycle_len must be at least 1")
        unknown = [n for n in self.norms if n not in SUPPORTED_NORMS]
        if unknown or not self.norms:
            raise ValueError(f"Unsupported norm passes: {unknown or 'none given'}")
        object.__setattr__(self, "norms", tuple(self.norms))

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["norms"] = list(self.norms)
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "JsrParams":
        """Create JsrParams from dictionary, filtering out unknown keys."""
        valid_fields = {f.name for f in fields(cls)}
        filtered = {k: v for k, v in data.items() if k in valid_fields and v is not None}
        if "norms" in filtered:
            filtered["norms"] = tuple(filtered["norms"])
        return cls(**filtered)


DEFAULT_JSR_PARAMS = JsrParams()

# Power iterations for the balanced norm weights
BALANCING_ITERATIONS = 200

# CLI exit codes
EXIT_OK = 0
EXIT_PARSE_ERROR = 2
EXIT_EMPTY_LANGUAGE = 3
EXIT_INFEASIBLE = 4
EXIT_UNSTABLE = 10
EXIT_INCONCLUSIVE = 11

# CSV row layout for stability reports
CSV_COLUMNS = ["m", "k", "strategy", "mode", "lb", "ub", "verdict", "depth", "walltime_ms"]
