from .catalog import PhaseSpec, WeightSpec, PHASE_KINDS, WEIGHT_KINDS
from .hull import (
    ConvexityCertificate,
    HullConstants,
    check_convexity,
    hull_constants,
    grid_extrema,
    abs_bound,
)

__all__ = [
    "PhaseSpec",
    "WeightSpec",
    "PHASE_KINDS",
    "WEIGHT_KINDS",
    "ConvexityCertificate",
    "HullConstants",
    "check_convexity",
    "hull_constants",
    "grid_extrema",
    "abs_bound",
]
