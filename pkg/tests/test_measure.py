import math

import numpy as np
import pytest

from ssmana.exceptions import (
    BudgetExceeded,
    ProbabilityInvalid,
    RatioOutOfRange,
    SeparationFailed,
)
from ssmana.measure import (
    TailSpec,
    bernoulli,
    from_dict,
    level_atoms,
    minimal_digits,
    preset,
    sample,
    sample_exact,
    split,
    validate,
    write_atoms_csv,
)
from ssmana.serialization import from_csv


def test_validate_cantor(cantor):
    assert cantor.theta == pytest.approx(3.0)
    assert cantor.alpha == pytest.approx(math.log(2) / math.log(3))
    assert cantor.delta == pytest.approx(0.75)
    assert cantor.hull == pytest.approx((0.0, 1.0))
    assert cantor.a_l > cantor.a_s
    assert cantor.translation_spread == pytest.approx(2 / 3)


def test_validate_selects_extreme_probabilities(biased3):
    assert biased3.p_l == pytest.approx(0.5)
    assert biased3.p_s == pytest.approx(0.2)
    assert (biased3.a_l, biased3.a_s) == pytest.approx((0.8, 0.0))


def test_validate_errors():
    with pytest.raises(RatioOutOfRange):
        validate(0.5, (0.0, 1.0), (0.5, 0.5))
    with pytest.raises(SeparationFailed):
        validate(0.2, (0.0, 0.1, 1.0), (1 / 3, 1 / 3, 1 / 3))
    with pytest.raises(ProbabilityInvalid):
        validate(0.25, (0.0, 0.75), (0.6, 0.6))
    with pytest.raises(ProbabilityInvalid):
        validate(0.25, (0.0, 0.75), (1.0, 0.0))
    with pytest.raises(ValueError):
        validate(0.25, (0.0,), (1.0,))


def test_two_maps_always_separate():
    # two images of the hull only touch when rho == 1/2
    ifs = validate(0.49, (0.0, 1e-3), (0.5, 0.5))
    lo, hi = ifs.hull
    assert ifs.translations[1] - ifs.translations[0] > ifs.rho * (hi - lo)


def test_validate_renormalizes():
    ifs = validate(0.25, (0.0, 0.75), (0.6, 0.4 + 1e-13))
    assert math.fsum(ifs.probabilities) == pytest.approx(1.0, abs=1e-15)


def test_from_dict_and_bernoulli():
    ifs = from_dict(preset("quarter")["ifs"])
    assert ifs.m == 2
    assert ifs.rho == 0.25
    b = bernoulli(0.45)
    assert b.hull == pytest.approx((0.0, 1.0))
    with pytest.raises(KeyError):
        from_dict({"rho": 0.2})
    with pytest.raises(KeyError):
        preset("no-such-preset")


def test_level_atoms_cantor(cantor):
    level0 = level_atoms(cantor, 0)
    np.testing.assert_allclose(level0.positions, [0.0, 2 / 3])
    np.testing.assert_allclose(level0.weights, [0.5, 0.5])

    level1 = level_atoms(cantor, 1)
    np.testing.assert_allclose(level1.positions, [0.0, 2 / 9, 2 / 3, 8 / 9])
    np.testing.assert_allclose(level1.weights, [0.25] * 4)


@pytest.mark.parametrize("level", [0, 3, 6])
def test_level_atoms_mass_and_gap(any_ifs, level):
    measure = level_atoms(any_ifs, level)
    assert len(measure) == any_ifs.m ** (level + 1)
    assert math.fsum(measure.weights) == pytest.approx(1.0, abs=1e-12)
    lo, hi = any_ifs.hull
    gap = np.diff(np.sort(any_ifs.translations)).min()
    floor = any_ifs.rho**level * (gap - any_ifs.rho * (hi - lo))
    assert measure.min_gap() >= floor * (1 - 1e-9) > 0


def test_level_atoms_budget(cantor):
    with pytest.raises(BudgetExceeded) as info:
        level_atoms(cantor, 10, budget=100)
    assert info.value.required == 2**11
    assert info.value.budget == 100


def test_split_tail(cantor, any_ifs):
    measure, tail = split(cantor, 3)
    assert measure.level == 3
    assert tail.start_level == 4
    assert tail.diameter == pytest.approx(1 / 81)
    ratio = TailSpec(any_ifs, 6).diameter / TailSpec(any_ifs, 5).diameter
    assert ratio == pytest.approx(any_ifs.rho, rel=1e-14)


def test_sample_basics(cantor):
    assert len(sample(cantor, 0, 0)) == 0
    points = sample(cantor, 7, 5000)
    assert points.min() >= 0.0 and points.max() <= 1.0
    np.testing.assert_array_equal(points, sample(cantor, 7, 5000))
    assert not np.array_equal(points, sample(cantor, 8, 5000))


def test_sample_mean(cantor):
    points = sample(cantor, 0, 10**4)
    # variance of the Cantor measure is 1/8
    sigma = math.sqrt(1 / 8 / len(points))
    assert abs(points.mean() - 0.5) < 4 * sigma


def test_sample_rejects_short_expansions(cantor):
    with pytest.raises(ValueError):
        sample(cantor, 0, 10, digits=5)
    assert cantor.rho ** minimal_digits(cantor) < 1e-15


def test_sample_exact_matches_float(biased3):
    digits = minimal_digits(biased3)
    exact = sample_exact(biased3, 3, 200, digits)
    floats = sample(biased3, 3, 200, digits)
    np.testing.assert_allclose([float(x) for x in exact], floats, atol=1e-14)


def test_write_atoms_csv(cantor, tmp_path):
    write_atoms_csv(level_atoms(cantor, 1), tmp_path / "atoms.csv")
    header, rows = from_csv(tmp_path / "atoms.csv")
    assert header == ["position", "weight"]
    assert len(rows) == 4
    assert float(rows[1][0]) == pytest.approx(2 / 9, abs=1e-16)
