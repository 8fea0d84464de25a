import math

import numpy as np
import pytest
from scipy.special import xlogy

from ssmana.exceptions import NoFeasiblePoint
from ssmana.exponent import (
    ExponentProblem,
    feasible,
    frequency_scales,
    gamma_objective,
    golden_section_max,
    grid_maximum,
    optimize_gamma,
    theoretical_rates,
)


def brute_grid(ifs, resolution=2000):
    """Feasible-grid maximum computed straight from the formulas."""
    rho, alpha, delta = ifs.rho, ifs.alpha, ifs.delta
    rate = math.log(delta) / math.log(rho)
    beta = np.linspace(0.5, min(1.0, 1.0 / (2.0 - alpha)), resolution + 2)[1:-1]
    eps = np.linspace(0.0, delta, resolution + 2)[1:-1]
    B, E = np.meshgrid(beta, eps, indexing="ij")
    omega = -xlogy(E, E) - xlogy(1 - E, 1 - E) + 2 * E * math.log(1 / rho + 2)
    lhs = omega * (1 - B) / math.log(rho) + 1 - (2 - alpha) * B
    rhs = (1 - B) * E * rate
    value = np.where(
        (lhs > rhs) & ((2 - alpha) * B < 1), np.minimum(2 * B - 1, rhs), -np.inf
    )
    return float(value.max())


def test_gamma_objective_examples(cantor):
    assert cantor.delta == pytest.approx(0.75)
    assert gamma_objective(0.5, 0.3, cantor) == 0.0
    assert gamma_objective(0.6, 0.0, cantor) == 0.0
    expected = 0.4 * 0.5 * math.log(0.75) / math.log(1 / 3)
    assert expected == pytest.approx(0.05237, abs=1e-5)
    assert gamma_objective(0.6, 0.5, cantor) == pytest.approx(expected, rel=1e-12)


def test_feasible_examples(cantor, any_ifs):
    ok, slack = feasible(0.73, 0.7, cantor)
    assert not ok and slack < 0
    ok, slack = feasible(0.55, 0.01, cantor)
    assert ok and slack == pytest.approx(0.2097, abs=1e-3)
    assert not feasible(0.55, any_ifs.delta, any_ifs)[0]
    assert not feasible(0.5, 0.01, any_ifs)[0]


def test_golden_section():
    assert golden_section_max(lambda x: -((x - 0.3) ** 2), 0.0, 1.0) == pytest.approx(
        0.3, abs=1e-6
    )


def test_optimize_matches_brute_grid(any_ifs):
    solution = optimize_gamma(any_ifs)
    assert solution.gamma > 0
    assert abs(solution.gamma - brute_grid(any_ifs)) < 1e-4
    ok, slack = feasible(solution.beta, solution.epsilon, any_ifs)
    assert ok and slack > 0
    assert solution.feasibility_slack == slack
    assert solution.gamma == gamma_objective(solution.beta, solution.epsilon, any_ifs)
    assert 0.5 < solution.beta < 1.0
    assert (2 - any_ifs.alpha) * solution.beta < 1.0
    assert 0.0 < solution.epsilon < any_ifs.delta
    assert solution.binding in ("beta", "epsilon", "tie")


def test_optimum_is_locally_maximal(cantor):
    solution = optimize_gamma(cantor)
    for db in (-1e-3, 0.0, 1e-3):
        for de in (-1e-3, 0.0, 1e-3):
            beta, eps = solution.beta + db, solution.epsilon + de
            if feasible(beta, eps, cantor)[0]:
                assert gamma_objective(beta, eps, cantor) <= solution.gamma + 1e-4


def test_optimize_beats_grid(cantor):
    solution = optimize_gamma(cantor, resolution=150)
    assert solution.gamma >= grid_maximum(cantor, 150)[2]
    assert optimize_gamma(cantor, resolution=150) == solution


def test_optimize_arguments(cantor):
    with pytest.raises(ValueError):
        optimize_gamma(cantor, resolution=50)
    with pytest.raises(NoFeasiblePoint):
        optimize_gamma(ExponentProblem(rho=1 / 3, alpha=0.63, delta=1e-10))
    with pytest.raises(ValueError):
        ExponentProblem(rho=1 / 3, alpha=0.63, delta=1.0)


def test_delta_override(cantor):
    solution = optimize_gamma(cantor, delta=0.5)
    problem = ExponentProblem(cantor.rho, cantor.alpha, 0.5)
    assert optimize_gamma(problem) == solution


def test_frequency_scales(cantor):
    assert frequency_scales(cantor, 0.5, 3**10 + 1) == (5, 10, 4)
    assert frequency_scales(cantor, 0.5, -(3**10 + 1)) == (5, 10, 4)
    with pytest.raises(ValueError):
        frequency_scales(cantor, 0.5, 0.5)


def test_theoretical_rates(cantor):
    solution = optimize_gamma(cantor)
    rates = theoretical_rates(solution, cantor)
    assert min(rates["taylor"], rates["separation"]) == pytest.approx(solution.gamma)
    assert rates["weight"] == solution.beta
    assert rates["covering"] - rates["separation"] == pytest.approx(
        solution.feasibility_slack, abs=1e-12
    )
