import json
import math
from fractions import Fraction

import numpy as np
import pytest

from ssmana.exceptions import ImaginaryResidue, PrecisionExceeded
from ssmana.measure import sample_exact
from ssmana.normality import (
    ImageTransform,
    MeasureTransform,
    PointMassTransform,
    SequenceSpec,
    del_increments,
    del_partial_sums,
    del_partial_sums_naive,
    del_slope,
    digit_frequencies,
    exact_digits,
    exact_image,
    geometric_checkpoints,
    normality_report,
    sequence_values,
    weyl_sums,
)
from ssmana.normality.report import sample_digits_needed
from ssmana.phase import PhaseSpec


def test_sequence_values():
    assert sequence_values(SequenceSpec(), 4) == [1, 2, 3, 4]
    assert sequence_values(SequenceSpec("arithmetic", (3, 2)), 3) == [3, 5, 7]
    assert sequence_values(SequenceSpec("geometric", (2,)), 3) == [2, 4, 8]
    assert sequence_values(SequenceSpec("explicit", (1, 5, 9)), 2) == [1, 5]
    assert sequence_values(SequenceSpec("geometric", (3,)), 60)[-1] == 3**60
    with pytest.raises(ValueError):
        sequence_values(SequenceSpec("explicit", (1, 5, 9)), 4)


@pytest.mark.parametrize(
    "kind, params",
    [
        ("fibonacci", ()),
        ("arithmetic", (0, 1)),
        ("geometric", (1,)),
        ("explicit", (3, 2)),
        ("explicit", ()),
    ],
)
def test_sequence_validation(kind, params):
    with pytest.raises(ValueError):
        SequenceSpec(kind, params)


def test_sequence_from_dict():
    spec = SequenceSpec.from_dict({"kind": "geometric", "params": [10]})
    assert spec == SequenceSpec("geometric", (10,))
    assert SequenceSpec.from_dict(spec.as_dict()) == spec


def test_digits_of_zero():
    table = digit_frequencies([0.0] * 5, 10, 5)
    assert table.frequencies[0] == 1.0
    assert table.sample_count == 5


def test_exact_expansions():
    assert exact_digits(Fraction(1, 3), 3, 0, 4) == [1, 0, 0, 0]
    assert exact_digits(Fraction(1, 7), 10, 0, 6) == [1, 4, 2, 8, 5, 7]
    assert exact_digits(Fraction(1, 7), 10, 6, 3) == [1, 4, 2]
    table = digit_frequencies([Fraction(1, 3)], 3, 4)
    np.testing.assert_array_equal(table.counts[:, 1], [1, 0, 0, 0])


def test_float_digits():
    table = digit_frequencies([0.25, 0.75], 2, 3)
    np.testing.assert_array_equal(table.counts, [[1, 1], [0, 2], [2, 0]])
    assert table.frequencies.sum() == pytest.approx(1.0)


def test_precision_guard():
    with pytest.raises(PrecisionExceeded):
        digit_frequencies([0.1], 2, 51)
    with pytest.raises(PrecisionExceeded):
        digit_frequencies([0.1], 3, 30, offset=20)
    # exact values are not limited
    digit_frequencies([Fraction(1, 10)], 2, 200)


def test_numba_digits_match_numpy():
    pytest.importorskip("numba")
    import ssmana.normality.digits as digits_module

    values = np.linspace(0.0, 3.0, 1001)
    np.testing.assert_array_equal(
        digits_module.extract_digits_numba(values, 3, 5, 20),
        digits_module.extract_digits(values, 3, 5, 20),
    )


def test_cantor_samples_avoid_digit_one(cantor):
    points = sample_exact(cantor, 0, 2000, 40)
    table = digit_frequencies(points, 3, 30)
    assert table.frequencies[1] == 0.0
    assert table.frequencies[0] + table.frequencies[2] == pytest.approx(1.0)


def test_weyl_constant_orbit():
    rows = weyl_sums(0.0, SequenceSpec(), 1, 50)
    assert [n for n, _ in rows] == list(range(1, 51))
    assert all(m == pytest.approx(1.0) for _, m in rows)


def test_weyl_half():
    for n, magnitude in weyl_sums(Fraction(1, 2), SequenceSpec(), 1, 40):
        assert magnitude <= 1.0 / n + 1e-12


def test_weyl_threads(cantor, square):
    points = sample_exact(cantor, 3, 40, 60)
    images = [exact_image(square, x) for x in points]
    seq = SequenceSpec("geometric", (2,))
    assert weyl_sums(images, seq, 1, 100) == weyl_sums(images, seq, 1, 100, threads=4)
    with pytest.raises(ValueError):
        weyl_sums(images, seq, 0, 100)


def test_weyl_geometric_equidistribution(cantor, square):
    points = sample_exact(cantor, 0, 200, 60)
    images = [exact_image(square, x) for x in points]
    rows = weyl_sums(images, SequenceSpec("geometric", (2,)), 1, 200)
    assert rows[-1][1] < 0.15


@pytest.mark.slow
def test_weyl_geometric_equidistribution_full(cantor, square):
    points = sample_exact(cantor, 0, 1000, 60)
    images = [exact_image(square, x) for x in points]
    rows = weyl_sums(images, SequenceSpec("geometric", (2,)), 1, 1000)
    assert rows[-1][1] < 0.1


def test_exact_image(square):
    assert exact_image(square, Fraction(1, 3)) == Fraction(1, 9)
    assert exact_image(PhaseSpec.identity(), Fraction(2, 9)) == Fraction(2, 9)
    cubic = PhaseSpec.polynomial((0.5, 0.0, 0.0, 2.0))
    assert exact_image(cubic, Fraction(1, 2)) == Fraction(3, 4)
    value = exact_image(PhaseSpec.exponential(1.0), Fraction(1, 2))
    assert isinstance(value, float)
    assert value == pytest.approx(math.exp(0.5))


def test_sample_depth(cantor):
    assert sample_digits_needed(cantor, 3, 50) == 70
    assert sample_digits_needed(cantor, 2, 50) == 52


def test_del_single_term(cantor):
    assert del_partial_sums(MeasureTransform(cantor), 1, SequenceSpec(), 1) == [
        (1, 1.0)
    ]


def test_del_point_mass_diverges():
    partials = del_partial_sums(
        PointMassTransform(), 1, SequenceSpec(), 500, geometric_checkpoints(500)
    )
    assert partials[-1][0] == 500
    harmonic = math.fsum(1.0 / n for n in range(1, 501))
    assert partials[-1][1] == pytest.approx(harmonic, rel=1e-12)
    assert del_slope(partials) >= -1.0


def test_del_incremental_matches_naive(cantor):
    transform = MeasureTransform(cantor)
    for seq in (SequenceSpec(), SequenceSpec("arithmetic", (2, 3))):
        fast = del_partial_sums(transform, 2, seq, 30)
        slow = del_partial_sums_naive(transform, 2, seq, 30)
        assert [n for n, _ in fast] == [n for n, _ in slow]
        np.testing.assert_allclose(
            [p for _, p in fast], [p for _, p in slow], rtol=1e-8
        )


def test_del_checkpoints_subset(cantor):
    transform = MeasureTransform(cantor)
    every = dict(del_partial_sums(transform, 1, SequenceSpec(), 40))
    some = del_partial_sums(transform, 1, SequenceSpec(), 40, [5, 17, 40])
    assert some == [(n, every[n]) for n in (5, 17, 40)]


def test_del_image_transform_converges(cantor, square):
    transform = ImageTransform(cantor, square, tol=1e-3)
    partials = del_partial_sums(
        transform, 1, SequenceSpec(), 60, geometric_checkpoints(60)
    )
    assert all(inc > 0 for _, inc in del_increments(partials))
    assert del_slope(partials) < -1.0


@pytest.mark.slow
def test_del_image_transform_converges_full(cantor, square):
    transform = ImageTransform(cantor, square, tol=1e-4)
    partials = del_partial_sums(
        transform, 1, SequenceSpec(), 500, geometric_checkpoints(500)
    )
    assert del_slope(partials) < -1.0


def test_del_residue_detected():
    def skewed(xi):
        return np.full(np.shape(xi), 1.0 + 0.5j)

    with pytest.raises(ImaginaryResidue) as info:
        del_partial_sums(skewed, 1, SequenceSpec(), 5)
    assert info.value.residue == pytest.approx(0.5)


def test_del_arguments():
    with pytest.raises(ValueError):
        del_partial_sums(PointMassTransform(), 0, SequenceSpec(), 5)
    with pytest.raises(ValueError):
        del_partial_sums(PointMassTransform(), 1, SequenceSpec(), 0)
    with pytest.raises(ValueError):
        del_slope([(1, 1.0), (2, 1.5)])


def test_del_increments():
    assert del_increments([(1, 1.0), (2, 1.5), (4, 2.0)]) == [(2, 0.5), (4, 0.25)]


def test_geometric_checkpoints():
    points = geometric_checkpoints(200)
    assert points[0] == 1 and points[-1] == 200
    assert all(b > a for a, b in zip(points, points[1:]))


def test_report_identity_contrast(cantor):
    report = normality_report(
        cantor,
        PhaseSpec.identity(),
        3,
        seed=0,
        sample_count=500,
        weyl_samples=0,
        del_n_max=0,
    )
    assert report.digit_frequencies[1] == 0.0
    assert not report.within_band
    assert report.weyl_magnitudes == {} and report.del_partials == {}


def test_report_square_base2_band(cantor, square):
    report = normality_report(
        cantor, square, 2, seed=0, sample_count=2000, weyl_n=0, del_n_max=0
    )
    assert report.sample_count == 2000
    assert report.digit_count == 30
    assert report.digit_positions == (21, 50)
    assert sum(report.digit_frequencies) == pytest.approx(1.0)
    assert report.sigma == pytest.approx(math.sqrt(0.25 / (2000 * 30)))
    assert report.within_band
    for row in report.position_frequencies:
        assert sum(row) == pytest.approx(1.0)


@pytest.mark.slow
def test_report_square_base2_band_full(cantor, square):
    report = normality_report(cantor, square, 2, seed=0, del_n_max=0)
    assert report.sample_count == 10**4
    assert report.within_band


def test_report_deterministic(cantor):
    kwargs = dict(
        sample_count=200,
        h_list=(1, 2),
        weyl_samples=20,
        weyl_n=30,
        del_n_max=40,
    )
    first = normality_report(cantor, PhaseSpec.identity(), 2, 7, **kwargs)
    second = normality_report(cantor, PhaseSpec.identity(), 2, 7, **kwargs)
    assert json.dumps(first.as_dict(), sort_keys=True) == json.dumps(
        second.as_dict(), sort_keys=True
    )
    assert set(first.del_slopes) == {1, 2}
    for rows in first.weyl_magnitudes.values():
        assert all(0.0 <= m <= 1.0 + 1e-12 for _, m in rows)
