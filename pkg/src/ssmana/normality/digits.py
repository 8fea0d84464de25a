import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..exceptions import PrecisionExceeded
from ..serialization import to_csv

try:
    import numba as nb

    FOUND_NUMBA = True
except ImportError:
    FOUND_NUMBA = False

DOUBLE_DIGIT_BITS = 50


if FOUND_NUMBA:

    @nb.njit(cache=True, error_model='numpy')
    def extract_digits_numba(values, base, offset, count):
        digits = np.zeros((values.shape[0], count), dtype=np.int64)
        for i in range(values.shape[0]):
            f = values[i] - np.floor(values[i])
            for k in range(offset + count):
                f *= base
                d = np.floor(f)
                f -= d
                if k >= offset:
                    digits[i, k - offset] = min(int(d), base - 1)
        return digits


def extract_digits(values, base, offset, count):
    """Base-b fractional digits offset+1 .. offset+count by multiply and floor."""
    digits = np.zeros((values.shape[0], count), dtype=np.int64)
    f = values - np.floor(values)
    for k in range(offset + count):
        f = f * base
        d = np.floor(f)
        f = f - d
        if k >= offset:
            digits[:, k - offset] = np.minimum(d.astype(np.int64), base - 1)
    return digits


def exact_digits(value, base, offset, count):
    """Digits of a Fraction, computed in integer arithmetic."""
    num = value.numerator % value.denominator
    scaled = (num * base ** (offset + count)) // value.denominator
    digits = []
    for _ in range(count):
        scaled, d = divmod(scaled, base)
        digits.append(d)
    return digits[::-1]


@dataclass
class DigitTable:
    """Digit counts per position (rows) and symbol (columns)."""

    base: int
    offset: int
    counts: np.ndarray = field(repr=False)

    @property
    def digit_count(self):
        return self.counts.shape[0]

    @property
    def sample_count(self):
        return int(self.counts[0].sum()) if self.digit_count else 0

    @property
    def frequencies(self):
        """Aggregate frequency of every symbol over all positions."""
        total = self.counts.sum()
        return self.counts.sum(axis=0) / total if total else np.zeros(self.base)

    @property
    def position_frequencies(self):
        totals = self.counts.sum(axis=1, keepdims=True)
        return self.counts / np.maximum(totals, 1)

    def sigma(self, aggregate=True):
        """Binomial standard deviation of a uniform symbol frequency."""
        p = 1.0 / self.base
        n = self.counts.sum() if aggregate else self.sample_count
        if n == 0:
            return float("nan")
        return math.sqrt(p * (1.0 - p) / n)

    def as_dict(self):
        return {
            "base": self.base,
            "offset": self.offset,
            "digit_count": self.digit_count,
            "samples": self.sample_count,
            "frequencies": self.frequencies.tolist(),
        }


def digit_frequencies(values, base, digit_count, offset=0):
    """
    Tabulate base-b digits of the fractional parts of ``values``.

    Floats are expanded by repeated multiply-and-floor and limited to
    ``(offset + digit_count) * log2(base) <= 50`` bits; ``Fraction``
    values are expanded exactly without that limit.

    Raises
    ------
    PrecisionExceeded
    """
    if base < 2:
        raise ValueError(f"base must be at least 2, got {base}")
    if len(values) and all(isinstance(v, Fraction) for v in values):
        rows = [exact_digits(v, base, offset, digit_count) for v in values]
        digits = np.array(rows, dtype=np.int64).reshape(len(values), digit_count)
    else:
        if (offset + digit_count) * math.log2(base) > DOUBLE_DIGIT_BITS:
            raise PrecisionExceeded(
                f"{offset + digit_count} base-{base} digits exceed double precision"
            )
        array = np.ascontiguousarray(values, dtype=float)
        kernel = extract_digits_numba if FOUND_NUMBA else extract_digits
        digits = kernel(array, base, offset, digit_count)
    counts = np.zeros((digit_count, base), dtype=np.int64)
    for position in range(digit_count):
        counts[position] = np.bincount(digits[:, position], minlength=base)
    return DigitTable(base, offset, counts)


def write_digit_csv(table, name):
    rows = (
        (table.offset + position + 1, digit, int(table.counts[position, digit]))
        for position in range(table.digit_count)
        for digit in range(table.base)
    )
    to_csv(rows, ("position", "digit", "count"), name)
