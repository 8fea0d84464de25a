from .optimize import (
    ExponentProblem,
    ExponentSolution,
    gamma_objective,
    feasible,
    grid_maximum,
    golden_section_max,
    optimize_gamma,
    frequency_scales,
    theoretical_rates,
)

__all__ = [
    "ExponentProblem",
    "ExponentSolution",
    "gamma_objective",
    "feasible",
    "grid_maximum",
    "golden_section_max",
    "optimize_gamma",
    "frequency_scales",
    "theoretical_rates",
]
