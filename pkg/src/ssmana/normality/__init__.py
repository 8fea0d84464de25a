from .sequences import SequenceSpec, SEQUENCE_KINDS, sequence_values
from .digits import (
    DOUBLE_DIGIT_BITS,
    DigitTable,
    digit_frequencies,
    exact_digits,
    write_digit_csv,
)
from .criteria import (
    MeasureTransform,
    ImageTransform,
    PointMassTransform,
    del_partial_sums,
    del_partial_sums_naive,
    del_increments,
    del_slope,
    geometric_checkpoints,
    weyl_magnitudes,
    weyl_sums,
)
from .report import NormalityReport, normality_report, exact_image

__all__ = [
    "SequenceSpec",
    "SEQUENCE_KINDS",
    "sequence_values",
    "DOUBLE_DIGIT_BITS",
    "DigitTable",
    "digit_frequencies",
    "exact_digits",
    "write_digit_csv",
    "MeasureTransform",
    "ImageTransform",
    "PointMassTransform",
    "del_partial_sums",
    "del_partial_sums_naive",
    "del_increments",
    "del_slope",
    "geometric_checkpoints",
    "weyl_magnitudes",
    "weyl_sums",
    "NormalityReport",
    "normality_report",
    "exact_image",
]
