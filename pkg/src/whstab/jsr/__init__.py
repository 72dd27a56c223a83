"""Joint spectral radius brackets and stability verdicts"""

from .bounds import (
    Bounds,
    spectral_radius,
    spectral_norm,
    canonical_rotation,
    lower_bound_cycles,
    walk_norm_rate,
)
from .gripenberg import gripenberg, balanced_weights
from .analysis import (
    Verdict,
    StabilityReport,
    verdict_for,
    is_borderline,
    analyze,
    analyze_closed_loop,
)

__all__ = [
    "Bounds",
    "spectral_radius",
    "spectral_norm",
    "canonical_rotation",
    "lower_bound_cycles",
    "walk_norm_rate",
    "gripenberg",
    "balanced_weights",
    "Verdict",
    "StabilityReport",
    "verdict_for",
    "is_borderline",
    "analyze",
    "analyze_closed_loop",
]
