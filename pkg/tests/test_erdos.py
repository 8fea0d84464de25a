import math

import numpy as np
import pytest

import ssmana.erdos.cover as cover_module
from ssmana.erdos import (
    CoverConfig,
    CoverResult,
    brute_membership,
    build_cover,
    child_window,
    count_bound,
    entropy,
    forced_chain,
    omega,
    orbit_digits,
    verify_cover,
)
from ssmana.exceptions import BudgetExceeded, DomainError, OracleViolation


def config(theta=3.0, epsilon=0.3, N=8, c0=1.0, H1=1.0, H2=2.0):
    return CoverConfig(c0=c0, theta=theta, epsilon=epsilon, N=N, H1=H1, H2=H2)


def test_omega_values():
    assert omega(0.5, 3.0) == pytest.approx(math.log(10.0), abs=1e-12)
    assert omega(0.25, 2.0) == pytest.approx(0.562335 + 0.693147, abs=1e-6)
    values = [omega(10.0**-k, 3.0) for k in range(1, 7)]
    assert all(a > b for a, b in zip(values, values[1:]))
    assert values[-1] < 1e-4


def test_entropy_limits():
    assert entropy(0.0) == 0.0
    assert entropy(1.0) == 0.0
    assert entropy(0.5) == pytest.approx(math.log(2.0))


@pytest.mark.parametrize(
    "call",
    [
        lambda: omega(0.0, 3.0),
        lambda: omega(1.0, 3.0),
        lambda: omega(0.3, 1.0),
        lambda: entropy(1.5),
    ],
)
def test_domain_errors(call):
    with pytest.raises(DomainError):
        call()


def test_config_validation():
    assert config().tau == pytest.approx(1 / 8)
    assert config(epsilon=0.3, N=8).max_bad == 2
    assert config().root_range() == (3, 6)
    with pytest.raises(ValueError):
        config(epsilon=0.5)
    with pytest.raises(ValueError):
        config(theta=1.0)
    with pytest.raises(ValueError):
        config(H1=2.0, H2=2.0)


def test_child_window():
    np.testing.assert_array_equal(child_window(5, 3.0), np.arange(13, 18))
    for theta in (2.0, 2.5, 3.7):
        sizes = {len(child_window(r, theta)) for r in range(-20, 40)}
        assert max(sizes) <= math.floor(theta) + 2


def test_brute_membership():
    assert brute_membership(5.0, config(theta=2.0, N=6)) == (True, 6)
    assert brute_membership(0.5, config(theta=3.0, N=8)) == (False, 0)


def test_zero_bad_budget_collapses_to_forced_chains():
    narrow = config(epsilon=0.1, N=8)
    assert narrow.max_bad == 0
    result = build_cover(narrow)
    assert result.count <= narrow.c0 * narrow.theta * (narrow.H2 - narrow.H1) + 1
    assert result.max_children <= 1


def test_forced_chain_matches_orbit():
    cfg = config(N=8)
    r1 = 4
    x = r1 / 3.0 + 0.1 / 3.0**8
    digits, offsets = orbit_digits(x, cfg)
    assert np.all(np.abs(offsets) < cfg.tau)
    np.testing.assert_array_equal(digits, forced_chain(r1, 3.0, 8))
    assert brute_membership(x, cfg) == (True, 8)


@pytest.mark.parametrize("theta", [2.0, 3.0, 2.5, 3.7])
def test_good_orbits_follow_forced_chain(theta):
    cfg = config(theta=theta, N=4, H1=1.0, H2=50.0)
    xs = np.random.default_rng(7).uniform(cfg.H1, cfg.H2, 50000)
    digits, offsets = orbit_digits(xs, cfg)
    assert digits.shape == offsets.shape == (50000, 4)
    good = np.all(np.abs(offsets) < cfg.tau, axis=1)
    assert np.count_nonzero(good) >= 10
    # rounding is exercised, not only exact multiples of theta
    assert np.abs(offsets[good]).max() > 0.5 * cfg.tau
    for r in digits[good]:
        np.testing.assert_array_equal(r, forced_chain(r[0], theta, cfg.N))


def test_cover_bound_and_placement():
    cfg = config()
    result = build_cover(cfg)
    assert result.count == len(result.intervals)
    assert result.count <= result.bound == count_bound(cfg)
    assert result.omega_bound == pytest.approx(math.exp(omega(0.3, 3.0) * 8))
    assert result.max_children <= math.floor(cfg.theta) + 2
    lefts = np.array([left for left, _ in result.intervals])
    rights = np.array([right for _, right in result.intervals])
    assert np.all(lefts >= cfg.H1 - cfg.width)
    assert np.all(rights <= cfg.H2 + cfg.width)
    assert np.all(rights - lefts <= cfg.width * (1 + 1e-12))


def test_verify_cover_examples():
    report, _ = verify_cover(config(), grid_points=10**5)
    assert report.violations == []
    assert report.members > 0
    assert report.ok

    report, result = verify_cover(config(theta=2.0, epsilon=0.45, N=10))
    assert report.ok
    assert result.count <= result.bound


def test_verify_cover_single_level():
    cfg = config(N=1)
    report, result = verify_cover(cfg, grid_points=2001)
    assert report.ok
    xs = np.linspace(cfg.H1, cfg.H2, 2001)
    near = np.abs(3.0 * xs - np.round(3.0 * xs)) < cfg.tau
    assert report.members == int(near.sum())


def test_verify_cover_needs_dense_grid():
    with pytest.raises(ValueError):
        verify_cover(config(), grid_points=100)


def test_node_budget():
    with pytest.raises(BudgetExceeded):
        build_cover(config(), node_budget=10)


def test_verify_cover_reports_missing_points(mocker):
    cfg = config()
    empty = CoverResult(
        config=cfg,
        leaves=np.array([], dtype=np.int64),
        intervals=[],
        count=0,
        bound=count_bound(cfg),
        omega_bound=1.0,
    )
    mocker.patch.object(cover_module, "build_cover", return_value=empty)
    with pytest.raises(OracleViolation) as info:
        verify_cover(cfg)
    assert info.value.points
    report, _ = verify_cover(cfg, strict=False)
    assert not report.ok
    assert len(report.violations) == report.members


def test_numba_kernel_matches_numpy():
    pytest.importorskip("numba")
    cfg = config(theta=2.5, N=10)
    xs = np.linspace(cfg.H1, cfg.H2, 5001)
    np.testing.assert_array_equal(
        cover_module.good_counts_numba(xs, cfg.scales, cfg.tau),
        cover_module.good_counts(xs, cfg.scales, cfg.tau),
    )


@pytest.mark.slow
@pytest.mark.parametrize("theta", [2.0, 3.0])
@pytest.mark.parametrize("epsilon", [0.2, 0.3, 0.45])
@pytest.mark.parametrize("N", [6, 8, 10])
def test_cover_oracle_grid(theta, epsilon, N):
    report, result = verify_cover(config(theta=theta, epsilon=epsilon, N=N))
    assert report.violations == []
    assert result.count <= result.bound
