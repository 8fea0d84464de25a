import logging
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np
from scipy.stats import linregress

from ..exceptions import ImaginaryResidue
from ..fourier import mu_hat, oscillatory
from ..phase import WeightSpec, hull_constants
from .sequences import sequence_values

logger = logging.getLogger(__name__)

RESIDUE_TOL = 1e-9


class MeasureTransform:
    """xi -> Fourier transform of the self-similar measure."""

    def __init__(self, ifs, tol=1e-9):
        self.ifs = ifs
        self.tol = tol

    def __call__(self, xi):
        return mu_hat(self.ifs, xi, self.tol)


class ImageTransform:
    """xi -> transform of the image measure, int exp(2 pi i xi phi) g dmu."""

    def __init__(self, ifs, phase, weight=None, tol=1e-4):
        self.ifs = ifs
        self.phase = phase
        self.weight = WeightSpec.constant(1.0) if weight is None else weight
        self.tol = tol
        self.constants = hull_constants(
            phase, self.weight, ifs, plumbing=phase.linear
        )

    def __call__(self, xi):
        xi = np.asarray(xi, dtype=float)
        values = [
            oscillatory(
                self.ifs, self.phase, self.weight, x, self.tol, constants=self.constants
            )
            for x in xi.ravel().tolist()
        ]
        result = np.array(values, dtype=complex).reshape(xi.shape)
        return complex(result) if result.ndim == 0 else result


class PointMassTransform:
    """Transform of the unit mass at the origin, identically one."""

    def __call__(self, xi):
        xi = np.asarray(xi, dtype=float)
        result = np.ones(xi.shape, dtype=complex)
        return complex(result) if result.ndim == 0 else result


def geometric_checkpoints(N_max, count=24):
    """Roughly log-spaced distinct integers in [1, N_max], always ending at N_max."""
    points = np.unique(np.geomspace(1, N_max, count).round().astype(int))
    return points.tolist()


def del_partial_sums(transform_eval, h, seq, N_max, checkpoints=None):
    """
    Partial sums of sum_N N**-3 sum_{m,n<=N} T(h (s_n - s_m)).

    Each step adds the new row and column of the double sum, evaluating
    the transform once per distinct difference. The double sum is real by
    Hermitian symmetry; the imaginary part is checked and then dropped.

    Returns
    -------
    list of (N, partial sum) at the checkpoints (every N when ``None``).

    Raises
    ------
    ImaginaryResidue
    """
    if h == 0:
        raise ValueError("h must be a non-zero integer")
    if N_max < 1:
        raise ValueError(f"N_max must be positive, got {N_max}")
    values = sequence_values(seq, N_max)
    wanted = set(range(1, N_max + 1) if checkpoints is None else checkpoints)
    cache = {}

    def lookup(differences):
        missing = sorted({d for d in differences if d not in cache})
        if missing:
            evaluated = np.atleast_1d(
                transform_eval(np.array([h * d for d in missing], dtype=float))
            )
            cache.update(zip(missing, evaluated.tolist()))
        return [cache[d] for d in differences]

    inner = 0.0 + 0.0j
    partial = 0.0
    partials = []
    for N in range(1, N_max + 1):
        s_new = values[N - 1]
        forward = [s_new - s for s in values[: N - 1]]
        row = lookup(forward + [-d for d in forward] + [0])
        inner += math.fsum(z.real for z in row) + 1j * math.fsum(z.imag for z in row)
        residue = abs(inner.imag)
        if residue > RESIDUE_TOL * max(1.0, abs(inner.real)):
            raise ImaginaryResidue(
                f"double sum at N={N} has imaginary part {inner.imag!r}",
                residue=residue,
            )
        partial += inner.real / N**3
        if N in wanted:
            partials.append((N, partial))
    return partials


def del_partial_sums_naive(transform_eval, h, seq, N_max):
    """Recompute the full double sum at every N; quadratic per step, for cross-checks."""
    values = sequence_values(seq, N_max)
    partial = 0.0
    partials = []
    for N in range(1, N_max + 1):
        head = np.array(values[:N], dtype=object)
        differences = np.subtract.outer(head, head).ravel()
        terms = transform_eval(np.array([h * d for d in differences], dtype=float))
        partial += float(np.sum(np.atleast_1d(terms)).real) / N**3
        partials.append((N, partial))
    return partials


def del_increments(partials):
    """Per-step terms N**-3 * (double sum) recovered at consecutive checkpoints."""
    increments = []
    for (n0, p0), (n1, p1) in zip(partials, partials[1:]):
        increments.append((n1, (p1 - p0) / (n1 - n0)))
    return increments


def del_slope(partials, start=10):
    """
    Log-log slope of the averaged increments from checkpoint ``start`` on.

    Slopes below -1 indicate a convergent series, -1 and above a
    divergent one.
    """
    points = [(n, inc) for n, inc in del_increments(partials) if n >= start and inc > 0]
    if len(points) < 2:
        raise ValueError("need two positive increments to estimate a slope")
    x = np.log([n for n, _ in points])
    y = np.log([inc for _, inc in points])
    return float(linregress(x, y).slope)


def _as_fraction(value):
    return value if isinstance(value, Fraction) else Fraction(float(value))


def weyl_magnitudes(y, seq_values, h):
    """|N**-1 sum_{n<=N} exp(2 pi i h s_n y)| for N = 1..len(seq_values)."""
    y = _as_fraction(y)
    num, den = y.numerator, y.denominator
    # exact reduction mod 1 before going to floating point
    phases = np.array([((h * s * num) % den) / den for s in seq_values], dtype=float)
    sums = np.cumsum(np.exp(2j * np.pi * phases))
    return np.abs(sums) / np.arange(1, len(seq_values) + 1)


def weyl_sums(values, seq, h, N_max, threads=1):
    """
    Weyl sums of the sequence s_n y for one value or averaged over a set.

    Phases h s_n y mod 1 are reduced in exact integer arithmetic, so
    floats are used at their exact binary value and ``Fraction`` inputs
    keep all their digits.

    Returns
    -------
    list of (N, magnitude) for N = 1..N_max
    """
    if h == 0:
        raise ValueError("h must be a non-zero integer")
    seq_values = sequence_values(seq, N_max)
    if isinstance(values, (int, float, Fraction)):
        values = [values]
    if not len(values):
        raise ValueError("weyl_sums needs at least one value")

    def work(y):
        return weyl_magnitudes(y, seq_values, h)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            rows = list(executor.map(work, values))
    else:
        rows = [work(y) for y in values]
    total = np.zeros(N_max)
    for row in rows:
        total += row
    total /= len(values)
    return list(zip(range(1, N_max + 1), total.tolist()))
