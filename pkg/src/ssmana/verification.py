"""
Invariant battery run by ``ssmana verify``.

Every check returns a list of violations, each a JSON-compatible mapping
with the check name, a message and the offending values. An empty list
from ``run_checks`` means every hard invariant held.
"""

import logging
import math

import numpy as np
from tqdm import tqdm

from .erdos import CoverConfig, forced_chain, orbit_digits, verify_cover
from .exponent import feasible, grid_maximum, optimize_gamma
from .fourier import (
    bad_step_check,
    char_poly,
    mu_hat,
    mu_hat_discrete,
    oscillatory_at_level,
    oscillatory_detail,
    tail_hat,
)
from .measure import (
    level_atoms,
    make_rng,
    preset_ifs,
    reference_ifs,
    sample,
    sample_exact,
    split,
)
from .normality import (
    MeasureTransform,
    SequenceSpec,
    del_partial_sums,
    del_partial_sums_naive,
    digit_frequencies,
)
from .phase import PhaseSpec, WeightSpec, grid_extrema, hull_constants

logger = logging.getLogger(__name__)

CHECKS = {}


def check(name):
    def register(func):
        CHECKS[name] = func
        return func

    return register


def violation(name, message, **values):
    return {"check": name, "message": message, **values}


@check("atoms")
def check_atoms(seed):
    found = []
    for name, ifs in reference_ifs().items():
        gaps = np.diff(np.sort(ifs.translations)).min()
        lo, hi = ifs.hull
        for level in range(6):
            measure = level_atoms(ifs, level)
            total = math.fsum(measure.weights.tolist())
            if abs(total - 1.0) > 1e-12:
                found.append(
                    violation(
                        "atoms",
                        "weights do not sum to one",
                        ifs=name,
                        level=level,
                        total=total,
                    )
                )
            if len(measure) != ifs.m ** (level + 1):
                found.append(
                    violation(
                        "atoms",
                        "wrong atom count",
                        ifs=name,
                        level=level,
                        count=len(measure),
                    )
                )
            floor = ifs.rho**level * (gaps - ifs.rho * (hi - lo))
            if not measure.min_gap() >= floor * (1.0 - 1e-9) > 0.0:
                found.append(
                    violation(
                        "atoms",
                        "atoms closer than the separation floor",
                        ifs=name,
                        level=level,
                        gap=measure.min_gap(),
                        floor=floor,
                    )
                )
    return found


@check("derived")
def check_derived(seed):
    found = []
    for name, ifs in reference_ifs().items():
        expected = {
            "theta": 1.0 / ifs.rho,
            "alpha": math.log(ifs.p_l) / math.log(ifs.rho),
            "delta": 1.0 - 2.0 * ifs.p_l / (1.0 + 1.0 / ifs.rho),
        }
        for key, value in expected.items():
            if getattr(ifs, key) != value:
                found.append(
                    violation(
                        "derived",
                        f"{key} not reproducible",
                        ifs=name,
                        stored=getattr(ifs, key),
                        recomputed=value,
                    )
                )
    return found


@check("sampling")
def check_sampling(seed):
    found = []
    for name, ifs in reference_ifs().items():
        first = sample(ifs, seed, 1000)
        second = sample(ifs, seed, 1000)
        if not np.array_equal(first, second):
            found.append(violation("sampling", "samples differ for one seed", ifs=name))
        lo, hi = ifs.hull
        if first.min() < lo or first.max() > hi:
            found.append(violation("sampling", "sample outside the hull", ifs=name))
    return found


@check("functional_equation")
def check_functional_equation(seed, count=200, tol=1e-9):
    found = []
    rng = make_rng(seed)
    for name, ifs in reference_ifs().items():
        xi = rng.uniform(-1e5, 1e5, count)
        lhs = mu_hat(ifs, xi, tol)
        rhs = char_poly(ifs, xi) * mu_hat(ifs, ifs.rho * xi, tol)
        error = np.abs(lhs - rhs)
        worst = int(np.argmax(error))
        if error[worst] >= 3.0 * tol:
            found.append(
                violation(
                    "functional_equation",
                    "recursion broken",
                    ifs=name,
                    xi=float(xi[worst]),
                    error=float(error[worst]),
                )
            )
        if np.abs(lhs).max() > 1.0 + tol:
            found.append(
                violation(
                    "functional_equation",
                    "modulus above one",
                    ifs=name,
                )
            )
        if mu_hat(ifs, 0.0, tol) != 1.0:
            found.append(
                violation(
                    "functional_equation",
                    "transform at the origin is not one",
                    ifs=name,
                )
            )
    return found


@check("factorization")
def check_factorization(seed, tol=1e-9):
    found = []
    frequencies = np.array([1.0, 10.0, 100.0, 1000.0])
    for name, ifs in reference_ifs().items():
        full = mu_hat(ifs, frequencies, tol)
        for level in range(9):
            measure, tail = split(ifs, level)
            product = mu_hat_discrete(measure, frequencies) * tail_hat(
                tail, frequencies, tol
            )
            error = float(np.abs(product - full).max())
            if error >= 2.0 * tol:
                found.append(
                    violation(
                        "factorization",
                        "split does not factor",
                        ifs=name,
                        level=level,
                        error=error,
                    )
                )
    return found


@check("pisot")
def check_pisot(seed):
    ifs = preset_ifs("cantor")
    anchor = abs(mu_hat(ifs, 1.0))
    powers = 3.0 ** np.arange(1, 21)
    error = np.abs(np.abs(mu_hat(ifs, powers)) - anchor)
    found = []
    if error.max() >= 1e-8:
        found.append(
            violation(
                "pisot",
                "transform changes along powers of three",
                error=float(error.max()),
            )
        )
    if not anchor > 0.05:
        found.append(violation("pisot", "non-decay anchor too small", value=anchor))
    return found


@check("phase_constants")
def check_phase_constants(seed):
    found = []
    ifs = preset_ifs("cantor")
    weight = WeightSpec.constant(1.0)
    pairs = [
        (PhaseSpec.quadratic(1.0), PhaseSpec.polynomial((0.0, 0.0, 1.0))),
        (PhaseSpec.quadratic(2.5, -0.5, 1.0), PhaseSpec.polynomial((1.0, -0.5, 2.5))),
    ]
    for closed, gridded in pairs:
        a = hull_constants(closed, weight, ifs).as_dict()
        b = hull_constants(gridded, weight, ifs).as_dict()
        for key in a:
            if abs(a[key] - b[key]) > 1e-12:
                found.append(
                    violation(
                        "phase_constants",
                        "grid and closed form disagree",
                        constant=key,
                        closed=a[key],
                        grid=b[key],
                    )
                )
    phase = PhaseSpec.exponential(1.5)
    lo, hi = ifs.hull
    closed = hull_constants(phase, weight, ifs)
    exact_h0 = float(phase.d2(hi))
    third = 1.5**3 * math.exp(1.5 * hi)
    _, gmax, margin = grid_extrema(phase.d2, ifs.hull, third)
    if abs(closed.H0 - exact_h0) > 1e-12 or gmax + margin < exact_h0:
        found.append(
            violation(
                "phase_constants",
                "exponential curvature bound unsound",
                closed=closed.H0,
                grid=gmax + margin,
            )
        )
    for candidate in (PhaseSpec.quadratic(1.0), phase):
        constants = hull_constants(candidate, weight, ifs)
        spread = ifs.translation_spread
        h1, h2 = spread * float(candidate.d1(lo)), spread * float(candidate.d1(hi))
        if constants.H1 != h1 or constants.H2 != h2:
            found.append(
                violation(
                    "phase_constants",
                    "H1, H2 not at the hull endpoints",
                    kind=candidate.kind,
                )
            )
    return found


@check("oscillatory")
def check_oscillatory(seed, tol=1e-4, max_atoms=1 << 22):
    found = []
    ifs = preset_ifs("cantor")
    phase = PhaseSpec.quadratic(1.0)
    weight = WeightSpec.constant(1.0)
    deepest = int(math.log(max_atoms) / math.log(ifs.m)) - 1
    for xi in (10.0, 100.0, 1000.0):
        result = oscillatory_detail(ifs, phase, weight, xi, tol)
        deeper = min(2 * result.level, deepest)
        if deeper > result.level:
            value = oscillatory_at_level(ifs, phase, weight, xi, deeper)
            if abs(value - result.value) >= tol:
                found.append(
                    violation(
                        "oscillatory",
                        "deeper level moves the value",
                        xi=xi,
                        level=result.level,
                        deeper=deeper,
                        change=abs(value - result.value),
                    )
                )
        mirror = oscillatory_detail(ifs, phase, weight, -xi, tol).value
        if abs(mirror - result.value.conjugate()) >= 2.0 * tol:
            found.append(
                violation(
                    "oscillatory",
                    "not Hermitian under xi -> -xi",
                    xi=xi,
                )
            )
    return found


@check("bad_steps")
def check_bad_steps(seed):
    found = []
    for name, ifs in reference_ifs().items():
        ok, worst, bound = bad_step_check(ifs, seed, 2000)
        if not ok:
            found.append(
                violation(
                    "bad_steps",
                    "|Phi| above the bad-step bound",
                    ifs=name,
                    worst=worst,
                    bound=bound,
                )
            )
    return found


@check("cover")
def check_cover(seed, lengths=(6, 8)):
    found = []
    for theta in (2.0, 3.0):
        for epsilon in (0.2, 0.3, 0.45):
            for N in lengths:
                config = CoverConfig(1.0, theta, epsilon, N, 1.0, 2.0)
                report, _ = verify_cover(config, strict=False)
                label = dict(theta=theta, epsilon=epsilon, N=N)
                if report.violations:
                    found.append(
                        violation(
                            "cover",
                            "member points not covered",
                            points=report.violations[:10], **label,
                        )
                    )
                if report.count > report.bound:
                    found.append(
                        violation(
                            "cover",
                            "count above bound",
                            count=report.count,
                            bound=report.bound, **label,
                        )
                    )
                if report.max_children > math.floor(theta) + 2:
                    found.append(
                        violation(
                            "cover",
                            "too many children",
                            children=report.max_children, **label,
                        )
                    )
    return found


FORCED_CHAIN_THETAS = (2.0, 3.0, 2.5, 3.7)
MIN_GOOD_ORBITS = 10


@check("forced_chain")
def check_forced_chain(seed, count=50000):
    found = []
    rng = make_rng(seed)
    for theta in FORCED_CHAIN_THETAS:
        config = CoverConfig(1.0, theta, 0.3, 4, 1.0, 50.0)
        xs = rng.uniform(config.H1, config.H2, count)
        digits, offsets = orbit_digits(xs, config)
        good = np.all(np.abs(offsets) < config.tau, axis=1)
        checked = int(np.count_nonzero(good))
        logger.debug(f"theta={theta}: {checked} all-good orbits out of {count}")
        if checked < MIN_GOOD_ORBITS:
            found.append(
                violation(
                    "forced_chain",
                    "too few all-good orbits sampled",
                    theta=theta,
                    checked=checked,
                )
            )
        for x, r in zip(xs[good].tolist(), digits[good]):
            if not np.array_equal(r, forced_chain(r[0], theta, config.N)):
                found.append(
                    violation(
                        "forced_chain",
                        "good orbit leaves the forced chain",
                        x=x,
                        theta=theta,
                    )
                )
    return found


@check("exponent")
def check_exponent(seed):
    found = []
    for name, ifs in reference_ifs().items():
        solution = optimize_gamma(ifs)
        ok, slack = feasible(solution.beta, solution.epsilon, ifs)
        if not ok or slack <= 0.0:
            found.append(
                violation(
                    "exponent",
                    "optimum infeasible",
                    ifs=name,
                    slack=slack,
                )
            )
        brute = grid_maximum(ifs, 400)
        if brute is not None and brute[2] > solution.gamma + 1e-4:
            found.append(
                violation(
                    "exponent",
                    "grid beats the optimizer",
                    ifs=name,
                    grid=brute[2],
                    gamma=solution.gamma,
                )
            )
    return found


@check("normality")
def check_normality(seed):
    found = []
    ifs = preset_ifs("cantor")
    table = digit_frequencies(sample_exact(ifs, seed, 1000, 40), 3, 20)
    if table.frequencies[1] != 0.0:
        found.append(
            violation(
                "normality",
                "Cantor samples carry the digit 1",
                frequency=float(table.frequencies[1]),
            )
        )
    transform = MeasureTransform(ifs, tol=1e-12)
    seq = SequenceSpec("identity")
    fast = dict(del_partial_sums(transform, 1, seq, 40))
    slow = dict(del_partial_sums_naive(transform, 1, seq, 40))
    error = max(abs(fast[n] - slow[n]) for n in fast)
    if error > 1e-9:
        found.append(
            violation(
                "normality",
                "incremental partials disagree with recomputation",
                error=error,
            )
        )
    return found


def run_checks(names=None, seed=0, progress=False):
    """
    Run the named checks (all of them by default) and collect violations.

    A check that raises is reported as a violation carrying the error.
    """
    names = list(CHECKS) if names is None else list(names)
    unknown = set(names) - set(CHECKS)
    if unknown:
        raise KeyError(f"unknown checks {sorted(unknown)}, known: {sorted(CHECKS)}")
    found = []
    for name in tqdm(names, desc="verify", disable=not progress):
        logger.info(f"running check {name}")
        try:
            found.extend(CHECKS[name](seed))
        except Exception as error:
            logger.exception(f"check {name} raised")
            found.append(violation(name, f"{type(error).__name__}: {error}"))
    logger.info(f"{len(found)} violations in {len(names)} checks")
    return found
