import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..measure import rationalize, sample_exact
from ..phase import WeightSpec
from .criteria import (
    ImageTransform,
    MeasureTransform,
    del_partial_sums,
    del_slope,
    geometric_checkpoints,
    weyl_sums,
)
from .digits import DigitTable, digit_frequencies
from .sequences import SequenceSpec

logger = logging.getLogger(__name__)

EXTRA_SAMPLE_DIGITS = 20

Series = List[Tuple[int, float]]


@dataclass
class NormalityReport:
    base: int
    sample_count: int
    digit_count: int
    digit_offset: int
    digit_frequencies: List[float]
    position_frequencies: List[List[float]] = field(repr=False)
    sigma: float = 0.0
    max_deviation: float = 0.0
    weyl_magnitudes: Dict[int, Series] = field(default_factory=dict, repr=False)
    del_partials: Dict[int, Series] = field(default_factory=dict, repr=False)
    del_slopes: Dict[int, float] = field(default_factory=dict)
    table: Optional[DigitTable] = field(default=None, repr=False, compare=False)

    @property
    def digit_positions(self):
        """First and last digit index (1-based) counted in the frequencies."""
        return self.digit_offset + 1, self.digit_offset + self.digit_count

    @property
    def within_band(self):
        """
        Every aggregate digit frequency within three binomial sigmas of 1/base.

        Only the digits in ``digit_positions`` are counted, not the leading
        ``digit_offset`` ones.
        """
        return self.max_deviation <= 3.0 * self.sigma

    def as_dict(self):
        return {
            "base": self.base,
            "sample_count": self.sample_count,
            "digit_count": self.digit_count,
            "digit_offset": self.digit_offset,
            "digit_positions": list(self.digit_positions),
            "digit_frequencies": self.digit_frequencies,
            "position_frequencies": self.position_frequencies,
            "sigma": self.sigma,
            "max_deviation": self.max_deviation,
            "within_band": self.within_band,
            "weyl_magnitudes": {
                str(h): [list(row) for row in rows]
                for h, rows in self.weyl_magnitudes.items()
            },
            "del_partials": {
                str(h): [list(row) for row in rows]
                for h, rows in self.del_partials.items()
            },
            "del_slopes": {str(h): s for h, s in self.del_slopes.items()},
        }


def exact_image(phase, x):
    """phi(x) for a Fraction x; exact except for the exponential phase."""
    if phase.kind == "exponential":
        return float(phase.value(float(x)))
    coefficients = [rationalize(c) for c in phase.poly.coef.tolist()]
    total = Fraction(0)
    for c in reversed(coefficients):
        total = total * x + c
    return total


def sample_digits_needed(ifs, base, digits):
    """IFS digits needed so sample truncation stays below ``digits`` base-b digits."""
    needed = math.ceil(digits * math.log(base) / math.log(ifs.theta))
    return int(needed) + EXTRA_SAMPLE_DIGITS


def normality_report(
    ifs,
    phase,
    base,
    seed,
    sample_count=10**4,
    digit_count=30,
    seq=None,
    h_list=(1,),
    digit_offset=20,
    weyl_samples=1000,
    weyl_n=1000,
    del_n_max=200,
    del_seq=None,
    tol=1e-4,
    weight=None,
    threads=1,
):
    """
    Digit statistics, Weyl sums and summability partials for phi(x), x ~ mu.

    Points are drawn exactly (rational arithmetic) and pushed through the
    phase; digits ``digit_offset+1 .. digit_offset+digit_count`` of each
    image are tabulated in base ``base``. Weyl sums of s_n phi(x) use the
    first ``weyl_samples`` images. The summability partials run over
    ``del_seq`` (s_n = n by default) with the transform of the image
    measure, or the plain transform for the identity phase.

    Returns
    -------
    NormalityReport
    """
    seq = SequenceSpec("geometric", (base,)) if seq is None else seq
    del_seq = SequenceSpec("identity") if del_seq is None else del_seq
    weight = WeightSpec.constant(1.0) if weight is None else weight
    total_digits = digit_offset + digit_count
    depth = sample_digits_needed(ifs, base, total_digits)
    logger.info(
        f"normality: {sample_count} samples at depth {depth}, base {base}, "
        f"digits {digit_offset + 1}..{total_digits}"
    )
    points = sample_exact(ifs, seed, sample_count, depth)
    images = [exact_image(phase, x) for x in points]

    table = digit_frequencies(images, base, digit_count, offset=digit_offset)
    deviations = np.abs(table.frequencies - 1.0 / base)
    sigma = table.sigma(aggregate=True)

    weyl = {}
    subset = images[: min(weyl_samples, len(images))]
    if subset and weyl_n > 0:
        for h in h_list:
            weyl[h] = weyl_sums(subset, seq, h, weyl_n, threads=threads)

    partials, slopes = {}, {}
    if del_n_max > 0:
        transform = (
            MeasureTransform(ifs, tol)
            if phase.linear
            else ImageTransform(ifs, phase, weight, tol)
        )
        checkpoints = geometric_checkpoints(del_n_max)
        for h in h_list:
            partials[h] = del_partial_sums(
                transform, h, del_seq, del_n_max, checkpoints
            )
            try:
                slopes[h] = del_slope(partials[h])
            except ValueError:
                logger.warning(f"too few checkpoints for a slope at h={h}")
                slopes[h] = float("nan")

    return NormalityReport(
        base=base,
        sample_count=table.sample_count,
        digit_count=digit_count,
        digit_offset=digit_offset,
        digit_frequencies=table.frequencies.tolist(),
        position_frequencies=table.position_frequencies.tolist(),
        sigma=sigma,
        max_deviation=float(deviations.max()) if deviations.size else 0.0,
        weyl_magnitudes=weyl,
        del_partials=partials,
        del_slopes=slopes,
        table=table,
    )
