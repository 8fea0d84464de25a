import logging
from dataclasses import dataclass

import numpy as np

from ..exceptions import ConvexityViolation, LinearPhase

logger = logging.getLogger(__name__)

GRID_POINTS = 4096


@dataclass(frozen=True)
class ConvexityCertificate:
    ok: bool
    min_value: float
    location: float
    linear: bool = False


@dataclass(frozen=True)
class HullConstants:
    """
    Bounds on the phase and weight over the attractor hull.

    H0 bounds |phi''|, M bounds |g| + |g'| on the doubled hull, H1/H2 are
    the extrema of (a_l - a_s) phi' and ``sup_phi1`` bounds |phi'|.
    """

    H0: float
    M: float
    H1: float
    H2: float
    sup_phi1: float

    def as_dict(self):
        return {
            "H0": self.H0,
            "M": self.M,
            "H1": self.H1,
            "H2": self.H2,
            "sup_phi1": self.sup_phi1,
        }


def _check_interval(interval):
    lo, hi = float(interval[0]), float(interval[1])
    if not hi > lo:
        raise ValueError(f"degenerate interval [{lo}, {hi}]")
    return lo, hi


def _real_roots_in(poly, lo, hi):
    if poly.degree() < 1:
        return []
    roots = poly.roots()
    return [r.real for r in roots if abs(r.imag) < 1e-12 and lo <= r.real <= hi]


def abs_bound(poly, interval):
    """Crude but rigorous bound of |poly| over the interval."""
    radius = max(abs(interval[0]), abs(interval[1]))
    return float(np.sum(np.abs(poly.coef) * radius ** np.arange(len(poly.coef))))


def grid_extrema(func, interval, lipschitz, points=GRID_POINTS):
    """
    Grid extrema of ``func`` and the safety margin covering the gaps.

    Returns
    -------
    lo_value, hi_value, margin : float
        Raw grid minimum and maximum, and ``lipschitz * h / 2`` with h the
        grid spacing. Any true extremum lies within ``margin`` of the grid one.
    """
    lo, hi = _check_interval(interval)
    t = np.linspace(lo, hi, points)
    values = func(t)
    margin = 0.5 * lipschitz * (hi - lo) / (points - 1)
    return float(values.min()), float(values.max()), margin


def check_convexity(phase, interval, plumbing=False):
    """
    Minimum of phi'' over the interval, located analytically.

    Raises
    ------
    LinearPhase
        For the identity phase unless ``plumbing`` is set, in which case a
        certificate flagged ``linear`` is returned.
    """
    lo, hi = _check_interval(interval)
    if phase.linear:
        if not plumbing:
            raise LinearPhase("identity phase has phi'' == 0")
        return ConvexityCertificate(False, 0.0, lo, linear=True)

    if phase.kind == "exponential":
        location = lo if phase.coefficients[0] > 0 else hi
    else:
        second = phase.poly.deriv(2)
        candidates = [lo, hi] + _real_roots_in(second.deriv(1), lo, hi)
        values = second(np.array(candidates))
        location = candidates[int(np.argmin(values))]
    min_value = float(phase.d2(location))
    return ConvexityCertificate(min_value > 0.0, min_value, float(location))


def _sup_abs_d2(phase, interval):
    lo, hi = interval
    if phase.kind == "quadratic":
        return abs(2.0 * phase.coefficients[0])
    if phase.kind == "exponential":
        return float(max(phase.d2(lo), phase.d2(hi)))
    if phase.kind == "identity":
        return 0.0
    second = phase.poly.deriv(2)
    lipschitz = abs_bound(second.deriv(1), interval)
    gmin, gmax, margin = grid_extrema(second, interval, lipschitz)
    return max(abs(gmin), abs(gmax)) + margin


def _sup_weight(weight, interval):
    if weight.kind == "constant":
        return abs(weight.coefficients[0])
    g = weight.poly
    # |g| + |g'| is Lipschitz with constant sup|g'| + sup|g''|
    lipschitz = abs_bound(g.deriv(1), interval) + abs_bound(g.deriv(2), interval)
    _, gmax, margin = grid_extrema(
        lambda t: np.abs(g(t)) + np.abs(g.deriv(1)(t)), interval, lipschitz
    )
    return gmax + margin


def hull_constants(phase, weight, ifs, plumbing=False):
    """
    Compute H0, M, H1, H2 and sup|phi'| for a phase/weight pair on an IFS.

    The phase must be strictly convex on the attractor hull, so phi' is
    increasing and H1, H2 and sup|phi'| are attained at the hull endpoints.
    """
    hull = ifs.hull
    certificate = check_convexity(phase, hull, plumbing=plumbing)
    if not (certificate.ok or certificate.linear):
        raise ConvexityViolation(
            f"phi'' = {certificate.min_value} <= 0 at t = {certificate.location}",
            location=certificate.location,
            value=certificate.min_value,
        )
    lo, hi = hull
    d1_lo, d1_hi = float(phase.d1(lo)), float(phase.d1(hi))
    spread = ifs.translation_spread
    constants = HullConstants(
        H0=_sup_abs_d2(phase, hull),
        M=_sup_weight(weight, ifs.doubled_hull()),
        H1=spread * d1_lo,
        H2=spread * d1_hi,
        sup_phi1=max(abs(d1_lo), abs(d1_hi)),
    )
    logger.info(f"hull constants {constants}")
    return constants
