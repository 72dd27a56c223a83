"""
Schema-validated analysis configuration (a single JSON document).
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from ..dynamics.state_space import StateSpace
from ..errors import ConfigError
from ..weakly_hard.constraints import Constraint, ConstraintSet
from .defaults import DEFAULT_JSR_PARAMS, SUPPORTED_NORMS, ActuatorMode, JsrParams, OutputFormat, Strategy
from .systems import BUILTIN_SYSTEMS

logger = logging.getLogger(__name__)


class StateSpaceModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    A: List[List[float]]
    B: List[List[float]]
    C: List[List[float]]
    D: List[List[float]]
    period_s: Optional[float] = None

    @field_validator("A", "B", "C", "D")
    @classmethod
    def _rectangular(cls, value: List[List[float]]) -> List[List[float]]:
        if not value or not value[0]:
            raise ValueError("matrix must have at least one row and one column")
        if any(len(row) != len(value[0]) for row in value):
            raise ValueError("all rows must have the same length")
        return value

    @model_validator(mode="after")
    def _consistent(self) -> "StateSpaceModel":
        self.to_state_space()
        return self

    def to_state_space(self) -> StateSpace:
        return StateSpace.from_dict(self.model_dump())


class JsrModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    delta: float = Field(DEFAULT_JSR_PARAMS.delta, gt=0)
    max_depth: int = Field(DEFAULT_JSR_PARAMS.max_depth, ge=1)
    budget: int = Field(DEFAULT_JSR_PARAMS.budget, ge=1)
    cycle_len: int = Field(DEFAULT_JSR_PARAMS.cycle_len, ge=1)
    norms: List[str] = Field(default_factory=lambda: list(DEFAULT_JSR_PARAMS.norms))
    workers: Optional[int] = None

    @field_validator("norms")
    @classmethod
    def _known_norms(cls, value: List[str]) -> List[str]:
        unknown = [n for n in value if n not in SUPPORTED_NORMS]
        if unknown or not value:
            raise ValueError(f"norms must be a non-empty subset of {list(SUPPORTED_NORMS)}")
        return value

    def to_params(self) -> JsrParams:
        return JsrParams.from_dict(self.model_dump())


class AnalysisConfig(BaseModel):
    """Plant, controller, strategy, actuator mode, constraints and JSR parameters."""
    model_config = ConfigDict(extra="forbid")

    plant: StateSpaceModel
    controller: StateSpaceModel
    strategy: Strategy = Strategy.KILL
    actuator: ActuatorMode = ActuatorMode.ZERO
    constraints: List[str] = Field(min_length=1)
    jsr: JsrModel = Field(default_factory=JsrModel)
    format: OutputFormat = OutputFormat.JSON

    @field_validator("constraints")
    @classmethod
    def _parse_constraints(cls, value: List[str]) -> List[str]:
        return [str(Constraint.parse(text)) for text in value]

    @model_validator(mode="after")
    def _loop_closes(self) -> "AnalysisConfig":
        plant, ctrl = self.plant.to_state_space(), self.controller.to_state_space()
        if ctrl.num_inputs != plant.num_outputs or ctrl.num_outputs != plant.num_inputs:
            raise ValueError(
                f"controller is {ctrl.num_outputs}x{ctrl.num_inputs} (out x in) "
                f"but the plant is {plant.num_outputs}x{plant.num_inputs}"
            )
        return self

    @classmethod
    def from_builtin(cls, name: str, **overrides: Any) -> "AnalysisConfig":
        """Config around a built-in plant/controller pair ("p1c1" or "p2c2")."""
        try:
            plant, ctrl = BUILTIN_SYSTEMS[name.lower()]
        except KeyError:
            raise ConfigError(f"Unknown built-in system {name!r}; choose from {sorted(BUILTIN_SYSTEMS)}")
        data = {"plant": plant, "controller": ctrl, **overrides}
        return parse_config(data)

    def constraint_set(self) -> ConstraintSet:
        return ConstraintSet.parse(self.constraints, self.strategy)

    def plant_system(self) -> StateSpace:
        return self.plant.to_state_space()

    def controller_system(self) -> StateSpace:
        return self.controller.to_state_space()

    def jsr_params(self) -> JsrParams:
        return self.jsr.to_params()


def _describe(error: ValidationError) -> str:
    lines = []
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"]) or "<root>"
        lines.append(f"{location}: {item['msg']}")
    return "; ".join(lines)


def parse_config(data: Dict[str, Any]) -> AnalysisConfig:
    """Validate an already decoded document.

    Raises:
        ConfigError: with dotted field paths for every schema violation
    """
    try:
        return AnalysisConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"Invalid configuration: {_describe(e)}") from e


def load_config(path: Union[str, Path]) -> AnalysisConfig:
    """Read and validate a JSON configuration file.

    Raises:
        ConfigError: with line:column for JSON syntax errors
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"Cannot read {path}: {e}") from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    logger.debug(f"Loaded configuration from {path}")
    return parse_config(data)


def dump_config(cfg: AnalysisConfig) -> str:
    return json.dumps(cfg.model_dump(mode="json"), indent=2) + "\n"
