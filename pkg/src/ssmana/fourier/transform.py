import logging
import math

import numpy as np

from ..measure import make_rng

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * np.pi
_SPLITTER = 134217729.0  # 2**27 + 1
REDUCTION_THRESHOLD = 2.0**45
CHUNK = 1 << 22


def _split(x):
    c = _SPLITTER * x
    hi = c - (c - x)
    return hi, x - hi


def frac_product(a, t):
    """
    Signed fractional part of ``a * t`` in [-1/2, 1/2].

    The rounding error of the product is recovered with Dekker's
    two-product so the reduction stays exact when ``|a * t|`` is large.
    """
    a = np.asarray(a, dtype=float)
    t = np.asarray(t, dtype=float)
    p = a * t
    a_hi, a_lo = _split(a)
    t_hi, t_lo = _split(t)
    err = ((a_hi * t_hi - p) + a_hi * t_lo + a_lo * t_hi) + a_lo * t_lo
    err = np.where(np.abs(p) > REDUCTION_THRESHOLD, err, 0.0)
    frac = (p - np.rint(p)) + err
    return frac - np.rint(frac)


def unit_phase(frac):
    return np.exp(1j * TWO_PI * frac)


def char_poly(ifs, t):
    """
    Characteristic polynomial Phi(t) = sum_j p_j exp(2 pi i a_j t).

    Accepts scalars or arrays; returns a complex scalar or array of the
    same shape as ``t``.
    """
    t = np.asarray(t, dtype=float)
    phases = unit_phase(frac_product(ifs.translations, t[..., np.newaxis]))
    result = phases @ ifs.probabilities
    if result.ndim == 0:
        return complex(result)
    return result


def truncation_depth(ifs, xi_abs, tol):
    """
    Smallest K with sum_{k>K} 2 pi max|a| |xi| rho**k < tol.

    Uses |Phi(t) - 1| <= 2 pi max|a_j| |t| on the dropped factors.
    """
    if not 0.0 < tol < 1.0:
        raise ValueError(f"tol must lie in (0, 1), got {tol}")
    rho = ifs.rho
    scale = TWO_PI * ifs.max_abs_translation * xi_abs / (1.0 - rho)
    if scale == 0.0:
        return 0
    # scale * rho**(K+1) < tol
    depth = max(0, int(math.ceil(math.log(tol / scale) / math.log(rho))) - 1)
    while scale * rho ** (depth + 1) >= tol:
        depth += 1
    while depth > 0 and scale * rho**depth < tol:
        depth -= 1
    return depth


def product_transform(ifs, xi, tol, start_level=0):
    """
    Truncated product prod_{k >= start_level} Phi(xi rho**k).

    The arguments are generated by repeated multiplication, and the
    truncation depth is chosen for the largest |xi rho**start_level| so
    every entry carries an error below ``tol``. Exact zero frequencies
    return exactly one.
    """
    xi = np.asarray(xi, dtype=float)
    t = xi.copy()
    for _ in range(start_level):
        t = t * ifs.rho
    t_abs = float(np.max(np.abs(t))) if t.size else 0.0
    depth = truncation_depth(ifs, t_abs, tol)
    result = np.ones(t.shape, dtype=complex)
    for _ in range(depth + 1):
        result *= char_poly(ifs, t)
        t = t * ifs.rho
    result = np.where(xi == 0.0, 1.0 + 0.0j, result)
    if result.ndim == 0:
        return complex(result)
    return result


def mu_hat(ifs, xi, tol=1e-9):
    """Fourier transform of the self-similar measure, error below ``tol``."""
    return product_transform(ifs, xi, tol)


def tail_hat(tail, xi, tol=1e-9):
    """Fourier transform of the tail measure of a split."""
    return product_transform(tail.ifs, xi, tol, start_level=tail.start_level)


def exponential_sum(positions, weights, xi):
    """sum_x w_x exp(2 pi i xi x) evaluated in chunks with exact phase reduction."""
    total = 0.0 + 0.0j
    for start in range(0, len(positions), CHUNK):
        stop = start + CHUNK
        phases = unit_phase(frac_product(xi, positions[start:stop]))
        total += complex(phases @ weights[start:stop])
    return total


def mu_hat_discrete(measure, xi):
    """Fourier transform of a finite atomic measure."""
    xi = np.asarray(xi, dtype=float)
    if xi.ndim == 0:
        return exponential_sum(measure.positions, measure.weights, float(xi))
    return np.array(
        [exponential_sum(measure.positions, measure.weights, x) for x in xi.tolist()]
    )


def bad_step_bound(ifs):
    """
    Bound on |Phi(t)| when ||(a_l - a_s) t|| >= 1/(2(1 + theta)).

    Returns the sharp constant |p_s + p_l exp(pi i/(1+theta))| + 1 - p_l - p_s.
    """
    angle = np.pi / (1.0 + ifs.theta)
    return abs(ifs.p_s + ifs.p_l * np.exp(1j * angle)) + 1.0 - ifs.p_l - ifs.p_s


def bad_step_check(ifs, seed=0, count=10000):
    """
    Sample bad frequencies and compare |Phi| with ``bad_step_bound``.

    Returns
    -------
    (bool, float, float)
        Whether every sample respects the bound, the largest sampled
        |Phi(t)| and the bound itself.
    """
    rng = make_rng(seed)
    tau = 1.0 / (2.0 * (1.0 + ifs.theta))
    spread = ifs.translation_spread
    # ||spread * t|| lies uniformly in [tau, 1/2]
    offsets = rng.uniform(tau, 0.5, count) * rng.choice((-1.0, 1.0), count)
    shifts = rng.integers(-1000, 1000, count)
    t = (shifts + offsets) / spread
    magnitudes = np.abs(char_poly(ifs, t))
    bound = bad_step_bound(ifs)
    worst = float(magnitudes.max()) if count else 0.0
    return worst <= bound + 1e-12, worst, float(bound)
