import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import xlogy

from ..erdos import omega
from ..exceptions import NoFeasiblePoint

logger = logging.getLogger(__name__)

MARGIN = 1e-9
TIE_TOL = 1e-6
INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ExponentProblem:
    """The constants the decay exponent depends on."""

    rho: float
    alpha: float
    delta: float

    def __post_init__(self):
        if not 0.0 < self.rho < 1.0:
            raise ValueError(f"rho must lie in (0, 1), got {self.rho}")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not 0.0 < self.delta < 1.0:
            raise ValueError(f"delta must lie in (0, 1), got {self.delta}")

    @classmethod
    def from_ifs(cls, ifs, delta=None):
        return cls(ifs.rho, ifs.alpha, ifs.delta if delta is None else float(delta))

    @property
    def theta(self):
        return 1.0 / self.rho

    @property
    def rate(self):
        """log(delta)/log(rho), positive."""
        return math.log(self.delta) / math.log(self.rho)

    @property
    def beta_bounds(self):
        return 0.5 + MARGIN, min(1.0, 1.0 / (2.0 - self.alpha)) - MARGIN

    @property
    def epsilon_bounds(self):
        return MARGIN, self.delta - MARGIN


@dataclass(frozen=True)
class ExponentSolution:
    beta: float
    epsilon: float
    gamma: float
    binding: str
    feasibility_slack: float

    def as_dict(self):
        return {
            "beta": self.beta,
            "epsilon": self.epsilon,
            "gamma": self.gamma,
            "binding": self.binding,
            "slack": self.feasibility_slack,
        }


def _problem(ifs, delta):
    if isinstance(ifs, ExponentProblem):
        return ifs
    return ExponentProblem.from_ifs(ifs, delta)


def gamma_objective(beta, epsilon, ifs, delta=None):
    """min{2 beta - 1, (1 - beta) epsilon log(delta)/log(rho)}."""
    problem = _problem(ifs, delta)
    return min(2.0 * beta - 1.0, (1.0 - beta) * epsilon * problem.rate)


def _omega_array(epsilon, theta):
    return (
        -xlogy(epsilon, epsilon)
        - xlogy(1.0 - epsilon, 1.0 - epsilon)
        + 2.0 * epsilon * np.log(theta + 2.0)
    )


def _slack(beta, epsilon, problem, omega_values):
    log_rho = math.log(problem.rho)
    return (
        omega_values * (1.0 - beta) / log_rho
        + 1.0
        - (2.0 - problem.alpha) * beta
        - (1.0 - beta) * epsilon * problem.rate
    )


def feasible(beta, epsilon, ifs, delta=None):
    """
    Check the box constraints and the covering inequality.

    Returns
    -------
    (bool, float)
        Feasibility and the covering-inequality slack
        omega(eps)(1-beta)/log(rho) + 1 - (2-alpha) beta - (1-beta) eps log(delta)/log(rho).
    """
    problem = _problem(ifs, delta)
    if not 0.0 < epsilon < 1.0:
        return False, -math.inf
    slack = _slack(beta, epsilon, problem, omega(epsilon, problem.theta))
    b_lo, b_hi = problem.beta_bounds
    e_lo, e_hi = problem.epsilon_bounds
    ok = (
        b_lo <= beta <= b_hi
        and (2.0 - problem.alpha) * beta <= 1.0 - MARGIN
        and e_lo <= epsilon <= e_hi
        and slack > MARGIN
    )
    return bool(ok), float(slack)


def grid_maximum(ifs, resolution, delta=None):
    """
    Best feasible point of a ``resolution`` x ``resolution`` grid.

    Ties go to the lexicographically smallest (beta, epsilon).

    Returns
    -------
    (beta, epsilon, gamma) or None when no grid point is feasible.
    """
    problem = _problem(ifs, delta)
    betas = np.linspace(*problem.beta_bounds, resolution)
    epsilons = np.linspace(*problem.epsilon_bounds, resolution)
    omegas = _omega_array(epsilons, problem.theta)
    B, E = np.meshgrid(betas, epsilons, indexing="ij")
    slack = _slack(B, E, problem, omegas[np.newaxis, :])
    objective = np.minimum(2.0 * B - 1.0, (1.0 - B) * E * problem.rate)
    objective = np.where(
        (slack > MARGIN) & ((2.0 - problem.alpha) * B <= 1.0 - MARGIN),
        objective,
        -np.inf,
    )
    best = int(np.argmax(objective))
    if not np.isfinite(objective.flat[best]):
        return None
    i, j = np.unravel_index(best, objective.shape)
    return float(betas[i]), float(epsilons[j]), float(objective[i, j])


def golden_section_max(func, a, b, tol=1e-12):
    """Golden-section search for the maximizer of a unimodal ``func`` on [a, b]."""
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = func(c), func(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = func(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = func(d)
    return a if func(a) >= func(b) else b


def _penalized(problem):
    def value(beta, epsilon):
        ok, _ = feasible(beta, epsilon, problem)
        return gamma_objective(beta, epsilon, problem) if ok else -math.inf

    return value


def _best_epsilon(problem, beta):
    value = _penalized(problem)
    e_lo, e_hi = problem.epsilon_bounds
    epsilon = golden_section_max(lambda e: value(beta, e), e_lo, e_hi)
    return epsilon, value(beta, epsilon)


def _binding(beta, epsilon, problem):
    first = 2.0 * beta - 1.0
    second = (1.0 - beta) * epsilon * problem.rate
    if abs(first - second) <= TIE_TOL:
        return "tie"
    return "beta" if first < second else "epsilon"


def optimize_gamma(ifs, resolution=200, delta=None):
    """
    Maximize the decay exponent over the feasible (beta, epsilon) region.

    A ``resolution`` x ``resolution`` grid locates the best point, then a
    nested golden-section search refines it: for each beta the largest
    feasible objective over epsilon, then the unimodal profile in beta.

    Parameters
    ----------
    ifs : DerivedIFS or ExponentProblem
    resolution : int
        Grid size per axis, at least 100.
    delta : float, optional
        Replaces the per-step contraction constant of the IFS.

    Returns
    -------
    ExponentSolution

    Raises
    ------
    NoFeasiblePoint
    """
    if resolution < 100:
        raise ValueError(f"resolution must be at least 100, got {resolution}")
    problem = _problem(ifs, delta)
    start = grid_maximum(problem, resolution)
    if start is None:
        raise NoFeasiblePoint(f"no feasible grid point for {problem}")
    beta, epsilon, gamma = start

    b_lo, b_hi = problem.beta_bounds
    refined_beta = golden_section_max(
        lambda b: _best_epsilon(problem, b)[1], b_lo, b_hi
    )
    refined_epsilon, refined_gamma = _best_epsilon(problem, refined_beta)
    if refined_gamma > gamma:
        beta, epsilon, gamma = refined_beta, refined_epsilon, refined_gamma

    ok, slack = feasible(beta, epsilon, problem)
    if not ok:
        raise NoFeasiblePoint(f"refined point ({beta}, {epsilon}) is infeasible")
    solution = ExponentSolution(
        beta=beta,
        epsilon=epsilon,
        gamma=gamma_objective(beta, epsilon, problem),
        binding=_binding(beta, epsilon, problem),
        feasibility_slack=slack,
    )
    logger.info(f"optimal exponent {solution}")
    return solution


def frequency_scales(ifs, beta, xi):
    """
    Split levels for a frequency.

    Returns (N1, N2, N) with rho**-N1 <= |xi|**beta < rho**-(N1+1),
    rho**-N2 <= |xi| < rho**-(N2+1) and N = N2 - N1 - 1.
    """
    xi = abs(float(xi))
    if xi < 1.0:
        raise ValueError(f"|xi| must be at least 1, got {xi}")
    log_theta = -math.log(ifs.rho)
    n1 = math.floor(beta * math.log(xi) / log_theta)
    n2 = math.floor(math.log(xi) / log_theta)
    return n1, n2, n2 - n1 - 1


def theoretical_rates(solution, ifs, delta=None):
    """Decay rates of the separate error terms at a solution."""
    problem = _problem(ifs, delta)
    beta, epsilon = solution.beta, solution.epsilon
    return {
        "taylor": 2.0 * beta - 1.0,
        "weight": beta,
        "separation": (1.0 - beta) * epsilon * problem.rate,
        "covering": 1.0
        - (2.0 - problem.alpha) * beta
        + omega(epsilon, problem.theta) * (1.0 - beta) / math.log(problem.rho),
    }
