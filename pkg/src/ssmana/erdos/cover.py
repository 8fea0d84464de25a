import logging
import math
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np
from scipy.special import comb, xlogy

from ..exceptions import BudgetExceeded, DomainError, OracleViolation

try:
    import numba as nb

    FOUND_NUMBA = True
except ImportError:
    FOUND_NUMBA = False

logger = logging.getLogger(__name__)

DEFAULT_NODE_BUDGET = 10**7


if FOUND_NUMBA:

    @nb.njit(cache=True, error_model='numpy')
    def good_counts_numba(xs, scales, tau):
        counts = np.zeros(xs.shape[0], dtype=np.int64)
        for i in range(xs.shape[0]):
            for k in range(scales.shape[0]):
                y = scales[k] * xs[i]
                eps = y - np.ceil(y - 0.5)
                if abs(eps) < tau:
                    counts[i] += 1
        return counts


def good_counts(xs, scales, tau):
    """Number of k with ||scales[k] * x|| < tau, for every x."""
    y = np.multiply.outer(xs, scales)
    eps = y - np.ceil(y - 0.5)
    return np.count_nonzero(np.abs(eps) < tau, axis=1)


@dataclass(frozen=True)
class CoverConfig:
    """Parameters of the set of x whose orbit c0 theta**k x is mostly near integers."""

    c0: float
    theta: float
    epsilon: float
    N: int
    H1: float
    H2: float

    def __post_init__(self):
        if not self.c0 > 0.0:
            raise ValueError(f"c0 must be positive, got {self.c0}")
        if not self.theta > 1.0:
            raise ValueError(f"theta must exceed 1, got {self.theta}")
        if not 0.0 < self.epsilon < 0.5:
            raise ValueError(f"epsilon must lie in (0, 1/2), got {self.epsilon}")
        if self.N < 1:
            raise ValueError(f"N must be at least 1, got {self.N}")
        if not self.H2 > self.H1:
            raise ValueError(f"empty range [{self.H1}, {self.H2}]")

    @property
    def tau(self):
        return 1.0 / (2.0 * (1.0 + self.theta))

    @property
    def max_bad(self):
        """Largest number of bad indices a member may have (strictly below eps N)."""
        return math.ceil(self.epsilon * self.N) - 1

    @property
    def width(self):
        return 1.0 / (self.c0 * self.theta**self.N)

    @property
    def scales(self):
        return self.c0 * self.theta ** np.arange(1, self.N + 1, dtype=float)

    def root_range(self):
        lo = math.ceil(self.c0 * self.theta * self.H1 - 0.5)
        hi = math.ceil(self.c0 * self.theta * self.H2 - 0.5)
        return lo, hi


@dataclass
class CoverResult:
    config: CoverConfig
    leaves: np.ndarray = field(repr=False)
    intervals: List[Tuple[float, float]] = field(repr=False)
    count: int = 0
    bound: float = 0.0
    omega_bound: float = 0.0
    nodes: int = 0
    max_children: int = 0


@dataclass
class CoverReport:
    count: int
    bound: float
    omega_bound: float
    ratio: float
    grid_points: int
    members: int
    violations: List[float]
    max_children: int

    @property
    def ok(self):
        return not self.violations and self.count <= self.bound

    def as_dict(self):
        return {
            "count": self.count,
            "bound": self.bound,
            "omega_bound": self.omega_bound,
            "ratio": self.ratio,
            "grid_points": self.grid_points,
            "members": self.members,
            "violations": self.violations,
            "max_children": self.max_children,
            "ok": self.ok,
        }


def entropy(t):
    """Binary entropy -t log t - (1-t) log(1-t), zero at both ends."""
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"entropy needs t in [0, 1], got {t}")
    return float(-xlogy(t, t) - xlogy(1.0 - t, 1.0 - t))


def omega(epsilon, theta):
    """Covering exponent h(eps) + 2 eps log(theta + 2)."""
    if not 0.0 < epsilon < 1.0:
        raise DomainError(f"epsilon must lie in (0, 1), got {epsilon}")
    if not theta > 1.0:
        raise DomainError(f"theta must exceed 1, got {theta}")
    return entropy(epsilon) + 2.0 * epsilon * math.log(theta + 2.0)


def count_bound(config):
    """(c0 theta (H2-H1) + 1) (theta+2)**(2 s) sum_{j<=s+1} C(N, j) with s the bad budget."""
    s = config.max_bad
    binomials = sum(int(comb(config.N, j, exact=True)) for j in range(s + 2))
    roots = config.c0 * config.theta * (config.H2 - config.H1) + 1.0
    return roots * (config.theta + 2.0) ** (2 * s) * binomials


def child_window(r, theta):
    """Integers within (theta + 1)/2 of theta * r."""
    center = theta * r
    half = 0.5 * (theta + 1.0)
    return np.arange(math.ceil(center - half), math.floor(center + half) + 1)


def forced_child(r, theta):
    return math.floor(theta * r + 0.5)


def orbit_digits(x, config):
    """
    Integer parts r_k and offsets eps_k in (-1/2, 1/2] of c0 theta**k x, k = 1..N.

    An array of x gives one row per point.
    """
    y = np.multiply.outer(x, config.scales)
    r = np.ceil(y - 0.5)
    return r.astype(np.int64), y - r


def forced_chain(r1, theta, N):
    chain = [int(r1)]
    for _ in range(N - 1):
        chain.append(forced_child(chain[-1], theta))
    return np.array(chain, dtype=np.int64)


def _expand(state, theta, max_bad):
    """Children of a DFS state (r, bad budget used, previous index bad)."""
    r, used, prev_bad = state
    window = None
    children = set()
    if prev_bad:
        window = child_window(r, theta)
        children.update((int(c), used, False) for c in window)
    else:
        children.add((forced_child(r, theta), used, False))
    if used < max_bad:
        if window is None:
            window = child_window(r, theta)
        children.update((int(c), used + 1, True) for c in window)
    distinct = len(window) if window is not None else 1
    return children, distinct


def build_cover(config, node_budget=DEFAULT_NODE_BUDGET):
    """
    Cover the near-integer set by intervals of length 1/(c0 theta**N).

    Depth-first search over the states (k, r_k, bad indices used, k bad),
    visiting each state once. Consecutive good indices force r_{k+1} to
    the integer nearest theta * r_k; otherwise r_{k+1} ranges over the
    child window. The distinct r_N of the leaves give the intervals.

    Raises
    ------
    BudgetExceeded
        More than ``node_budget`` states visited.
    """
    theta, max_bad, N = config.theta, config.max_bad, config.N
    lo, hi = config.root_range()
    stack = []
    for r1 in range(hi, lo - 1, -1):
        if max_bad >= 1:
            stack.append((1, (r1, 1, True)))
        stack.append((1, (r1, 0, False)))

    visited = set()
    leaves = set()
    max_children = 0
    while stack:
        k, state = stack.pop()
        if (k, state) in visited:
            continue
        visited.add((k, state))
        if len(visited) > node_budget:
            raise BudgetExceeded(
                f"cover search exceeded {node_budget} states", budget=node_budget
            )
        if k == N:
            leaves.add(state[0])
            continue
        children, distinct = _expand(state, theta, max_bad)
        max_children = max(max_children, distinct)
        for child in sorted(children, reverse=True):
            if (k + 1, child) not in visited:
                stack.append((k + 1, child))

    leaves = np.array(sorted(leaves), dtype=np.int64)
    width = config.width
    intervals = []
    for r in leaves.tolist():
        left = max(r * width - 0.5 * width, config.H1)
        right = min(r * width + 0.5 * width, config.H2)
        if right > left or (right == left == config.H1):
            intervals.append((left, right))

    result = CoverResult(
        config=config,
        leaves=leaves,
        intervals=intervals,
        count=len(intervals),
        bound=count_bound(config),
        omega_bound=math.exp(omega(config.epsilon, config.theta) * N),
        nodes=len(visited),
        max_children=max_children,
    )
    logger.info(
        f"cover: {result.count} intervals, bound {result.bound:.6g}, "
        f"{result.nodes} states"
    )
    if result.count > result.bound:
        raise OracleViolation(
            f"cover count {result.count} exceeds bound {result.bound}"
        )
    return result


def brute_membership(x, config):
    """
    Direct membership test.

    Returns
    -------
    (bool, int)
        Membership and the number of k <= N with ||c0 theta**k x|| < tau.
    """
    counts = _good_counts(np.array([float(x)]), config)
    good = int(counts[0])
    return good > (1.0 - config.epsilon) * config.N, good


def _good_counts(xs, config):
    kernel = good_counts_numba if FOUND_NUMBA else good_counts
    return kernel(np.ascontiguousarray(xs, dtype=float), config.scales, config.tau)


def covered(xs, result, slack=1e-12):
    """Whether each x lies in a cover interval, or has its r_N among the leaves."""
    config = result.config
    r_n = np.ceil(config.scales[-1] * xs - 0.5).astype(np.int64)
    in_leaves = np.isin(r_n, result.leaves)
    if not result.intervals:
        return in_leaves
    bounds = np.array(result.intervals)
    idx = np.searchsorted(bounds[:, 0], xs, side="left") - 1
    idx = np.clip(idx, 0, len(bounds) - 1)
    pad = slack * max(1.0, abs(config.H1), abs(config.H2))
    in_interval = (xs > bounds[idx, 0] - pad) & (xs <= bounds[idx, 1] + pad)
    return in_leaves | in_interval


def verify_cover(
    config, grid_points=None, node_budget=DEFAULT_NODE_BUDGET, strict=True
):
    """
    Check the cover against brute-force membership on a uniform grid.

    ``grid_points`` defaults to (and must be at least) ten samples per
    cover interval width over [H1, H2].

    Raises
    ------
    OracleViolation
        A member grid point is not covered and ``strict`` is set.
    """
    minimum = math.ceil(10.0 * (config.H2 - config.H1) / config.width)
    if grid_points is None:
        grid_points = minimum + 1
    if grid_points < minimum:
        raise ValueError(f"need at least {minimum} grid points, got {grid_points}")
    result = build_cover(config, node_budget)
    xs = np.linspace(config.H1, config.H2, grid_points)
    members = _good_counts(xs, config) > (1.0 - config.epsilon) * config.N
    member_xs = xs[members]
    missing = member_xs[~covered(member_xs, result)]
    report = CoverReport(
        count=result.count,
        bound=result.bound,
        omega_bound=result.omega_bound,
        ratio=result.count / result.omega_bound,
        grid_points=grid_points,
        members=int(members.sum()),
        violations=missing.tolist(),
        max_children=result.max_children,
    )
    if missing.size and strict:
        raise OracleViolation(
            f"{missing.size} member points not covered", points=missing.tolist()
        )
    return report, result
