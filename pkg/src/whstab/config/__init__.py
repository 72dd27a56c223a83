"""Configuration module for the weakly-hard stability toolkit"""

from .defaults import (
    Strategy,
    ActuatorMode,
    OutputFormat,
    JsrParams,
    NORM_SPECTRAL,
    NORM_BALANCED,
    SUPPORTED_NORMS,
    DEFAULT_JSR_PARAMS,
    BALANCING_ITERATIONS,
    EXIT_OK,
    EXIT_PARSE_ERROR,
    EXIT_EMPTY_LANGUAGE,
    EXIT_INFEASIBLE,
    EXIT_UNSTABLE,
    EXIT_INCONCLUSIVE,
    CSV_COLUMNS,
)
from .systems import BUILTIN_SYSTEMS

__all__ = [
    # From defaults
    "Strategy",
    "ActuatorMode",
    "OutputFormat",
    "JsrParams",
    "NORM_SPECTRAL",
    "NORM_BALANCED",
    "SUPPORTED_NORMS",
    "DEFAULT_JSR_PARAMS",
    "BALANCING_ITERATIONS",
    "EXIT_OK",
    "EXIT_PARSE_ERROR",
    "EXIT_EMPTY_LANGUAGE",
    "EXIT_INFEASIBLE",
    "EXIT_UNSTABLE",
    "EXIT_INCONCLUSIVE",
    "CSV_COLUMNS",
    # From systems
    "BUILTIN_SYSTEMS",
]
