import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..exceptions import BudgetExceeded
from ..measure import DEFAULT_ATOM_BUDGET, TailSpec, atom_count, level_atoms
from ..phase import hull_constants
from .transform import CHUNK, TWO_PI, frac_product, tail_hat, unit_phase

logger = logging.getLogger(__name__)

METHODS = ("transport", "linearized")


@dataclass(frozen=True)
class OscillatoryResult:
    value: complex
    level: int
    error_bound: float
    atoms: int
    method: str


@lru_cache(maxsize=2)
def _cached_atoms(ifs, level, budget):
    return level_atoms(ifs, level, budget)


def transport_bound(constants, xi, diameter):
    """
    Error of moving every tail mass onto the tail center.

    (2 pi |xi| (sup|phi'| D + H0 D**2) + M D) * max(M, 1)
    """
    xi = abs(xi)
    return (
        TWO_PI * xi * (constants.sup_phi1 * diameter + constants.H0 * diameter**2)
        + constants.M * diameter
    ) * max(constants.M, 1.0)


def linearized_bound(constants, xi, diameter):
    """Error of replacing phi by its tangent line across each tail copy."""
    return (TWO_PI * abs(xi) * constants.H0 * diameter**2 + diameter) * max(
        constants.M, 1.0
    )


def _bound_function(method):
    if method == "transport":
        return transport_bound
    if method == "linearized":
        return linearized_bound
    raise ValueError(f"unknown method {method!r}, use one of {METHODS}")


def max_affordable_level(ifs, budget):
    level = 0
    while atom_count(ifs, level + 1) <= budget:
        level += 1
    return level


def choose_level(
    ifs, constants, xi, tol, method="transport", budget=DEFAULT_ATOM_BUDGET
):
    """
    Smallest split level whose truncation bound is below ``tol``.

    Raises
    ------
    BudgetExceeded
        When the required level has more atoms than ``budget``; the error
        carries the tolerance reachable at the largest affordable level.
    """
    bound = _bound_function(method)
    if atom_count(ifs, 0) > budget:
        raise BudgetExceeded(f"budget {budget} below a single level", budget=budget)
    top = max_affordable_level(ifs, budget)
    for level in range(top + 1):
        error = bound(constants, xi, TailSpec(ifs, level + 1).diameter)
        if error <= tol:
            return level, error
    achievable = bound(constants, xi, TailSpec(ifs, top + 1).diameter)
    # the required level only needs locating for the message
    level = top
    while bound(constants, xi, TailSpec(ifs, level + 1).diameter) > tol:
        level += 1
    raise BudgetExceeded(
        f"xi={xi} tol={tol} needs level {level} "
        f"({atom_count(ifs, level)} atoms, budget {budget}); "
        f"best reachable tol is {achievable:.3g}",
        required=atom_count(ifs, level),
        budget=budget,
        achievable_tol=achievable,
    )


def oscillatory_at_level(
    ifs,
    phase,
    weight,
    xi,
    level,
    method="transport",
    tail_tol=1e-12,
    budget=DEFAULT_ATOM_BUDGET,
):
    """
    Atom sum approximating int exp(2 pi i xi phi) g dmu at a fixed level.

    Every atom is moved to the center c of its tail copy. The
    ``linearized`` method also multiplies by the tail transform at the
    local frequency xi * phi'(x + c).
    """
    _bound_function(method)
    measure = _cached_atoms(ifs, level, budget)
    tail = TailSpec(ifs, level + 1)
    center = tail.center
    total = 0.0 + 0.0j
    for start in range(0, len(measure), CHUNK):
        x = measure.positions[start : start + CHUNK] + center
        amplitude = measure.weights[start : start + CHUNK] * weight.value(x)
        terms = amplitude * unit_phase(frac_product(xi, phase.value(x)))
        if method == "linearized":
            frequency = xi * phase.d1(x)
            terms = (
                terms
                * unit_phase(-frac_product(frequency, center))
                * tail_hat(tail, frequency, tail_tol)
            )
        total += complex(np.sum(terms))
    return total


def oscillatory_detail(
    ifs,
    phase,
    weight,
    xi,
    tol=1e-6,
    method="transport",
    constants=None,
    budget=DEFAULT_ATOM_BUDGET,
):
    """
    Oscillatory integral with the level, error bound and atom count used.

    Parameters
    ----------
    ifs : DerivedIFS
    phase : PhaseSpec
    weight : WeightSpec
    xi : float
        Frequency.
    tol : float
        Guaranteed bound on |result - integral|, in (0, 1).
    method : {"transport", "linearized"}
    constants : HullConstants, optional
        Reused when given, otherwise computed (the identity phase is
        admitted in plumbing mode).
    budget : int
        Atom budget for the level-N approximant.

    Returns
    -------
    OscillatoryResult
    """
    if not 0.0 < tol < 1.0:
        raise ValueError(f"tol must lie in (0, 1), got {tol}")
    if constants is None:
        constants = hull_constants(phase, weight, ifs, plumbing=phase.linear)
    xi = float(xi)
    if method == "linearized":
        level, error = choose_level(ifs, constants, xi, 0.5 * tol, method, budget)
        tail_tol = 0.5 * tol / max(constants.M, 1.0)
        error += 0.5 * tol
    else:
        level, error = choose_level(ifs, constants, xi, tol, method, budget)
        tail_tol = 1e-12
    value = oscillatory_at_level(
        ifs, phase, weight, xi, level, method, min(tail_tol, 0.5), budget
    )
    logger.debug(f"xi={xi} method={method} level={level} bound={error:.3g}")
    return OscillatoryResult(value, level, error, atom_count(ifs, level), method)


def oscillatory(ifs, phase, weight, xi, tol=1e-6, **kwargs):
    """The oscillatory integral of the weighted phase against the measure."""
    return oscillatory_detail(ifs, phase, weight, xi, tol, **kwargs).value
