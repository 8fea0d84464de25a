import logging
import math
from fractions import Fraction

import numpy as np

logger = logging.getLogger(__name__)

SAMPLE_RESOLUTION = 1e-15
MAX_DENOMINATOR = 10**9


def minimal_digits(ifs):
    """Smallest digit count with rho**digits below the sampling resolution."""
    return int(math.ceil(math.log(SAMPLE_RESOLUTION) / math.log(ifs.rho))) + 1


def make_rng(seed):
    # Philox is counter based, so streams are reproducible across machines
    return np.random.Generator(np.random.Philox(key=int(seed)))


def sample_indices(ifs, seed, count, digits):
    """Matrix of i.i.d. map indices, one row of ``digits`` indices per point."""
    rng = make_rng(seed)
    cdf = np.cumsum(ifs.probabilities)
    cdf[-1] = 1.0
    u = rng.random((count, digits))
    return np.searchsorted(cdf, u, side="right")


def sample(ifs, seed, count, digits=None):
    """
    Draw points distributed by the self-similar measure.

    Each point is sum_{k<digits} rho**k * a_{J_k} with i.i.d. indices J_k
    drawn from the probability vector, the indices generated by a Philox
    stream keyed by ``seed``.

    Returns
    -------
    numpy.ndarray
        Array of ``count`` points inside the attractor hull.
    """
    if count < 0:
        raise ValueError(f"count must be non-negative, got {count}")
    if digits is None:
        digits = minimal_digits(ifs)
    if ifs.rho**digits >= SAMPLE_RESOLUTION:
        raise ValueError(
            f"{digits} digits leave a truncation of {ifs.rho ** digits:.3g} "
            f"relative to the hull, need < {SAMPLE_RESOLUTION}"
        )
    if count == 0:
        return np.empty(0)
    indices = sample_indices(ifs, seed, count, digits)
    powers = ifs.rho ** np.arange(digits)
    points = ifs.translations[indices] @ powers
    lo, hi = ifs.hull
    return np.clip(points, lo, hi)


def rationalize(value, max_denominator=MAX_DENOMINATOR):
    """Nearest small-denominator fraction, or the exact binary value when none is close."""
    exact = Fraction(value)
    approx = exact.limit_denominator(max_denominator)
    if abs(approx - exact) <= 4 * np.finfo(float).eps * max(1.0, abs(value)):
        return approx
    logger.warning(f"{value!r} has no small-denominator form, using its binary value")
    return exact


def sample_exact(ifs, seed, count, digits):
    """
    Same draws as ``sample`` with exact rational arithmetic.

    The contraction ratio and translations are rationalized, and every
    point is returned as a ``Fraction`` so that digit expansions and
    orbits under integer multiplication stay exact far beyond double
    precision.
    """
    if count < 0:
        raise ValueError(f"count must be non-negative, got {count}")
    if count == 0:
        return []
    rho = rationalize(ifs.rho)
    translations = [rationalize(a) for a in ifs.translations.tolist()]
    common = math.lcm(*(a.denominator for a in translations))
    numerators = [int(a * common) for a in translations]
    p, q = rho.numerator, rho.denominator
    powers_p = [p**k for k in range(digits)]
    denominator = common * q ** (digits - 1)

    points = []
    for row in sample_indices(ifs, seed, count, digits).tolist():
        total = 0
        for k, j in enumerate(row):
            # sum_k A_{J_k} p**k q**(digits-1-k)
            total = total * q + numerators[j] * powers_p[k]
        points.append(Fraction(total, denominator))
    return points
