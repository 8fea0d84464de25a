import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np
from scipy.stats import linregress
from tqdm import tqdm

from ..exceptions import InsufficientWindows
from ..measure import DEFAULT_ATOM_BUDGET
from ..phase import hull_constants
from ..serialization import from_pickle, to_csv, to_pickle
from .oscillatory import oscillatory_detail

logger = logging.getLogger(__name__)

MIN_WINDOWS = 4
_TINY = 1e-300


@dataclass
class DecayProfile:
    """
    Sampled |integral| on a frequency grid with its dyadic envelope.

    ``window_sups[i]`` is the largest magnitude inside the dyadic window
    [2**windows[i], 2**(windows[i]+1)) and ``window_locations[i]`` the
    frequency where it is attained.
    """

    grid: np.ndarray = field(repr=False)
    magnitudes: np.ndarray = field(repr=False)
    window_ids: np.ndarray = field(repr=False)
    windows: np.ndarray = field(repr=False)
    window_sups: np.ndarray = field(repr=False)
    window_locations: np.ndarray = field(repr=False)
    fitted_gamma: float = math.nan
    fit_range: Tuple[float, float] = (math.nan, math.nan)
    residual: float = math.nan

    @classmethod
    def from_samples(cls, grid, magnitudes, fit_range=None):
        grid = np.asarray(grid, dtype=float)
        magnitudes = np.asarray(magnitudes, dtype=float)
        if grid.ndim != 1 or grid.shape != magnitudes.shape:
            raise ValueError("grid and magnitudes must be matching 1D arrays")
        if np.any(grid <= 0.0) or np.any(np.diff(grid) <= 0.0):
            raise ValueError("grid must be positive and strictly increasing")
        window_ids = np.floor(np.log2(grid)).astype(np.int64)
        windows = np.unique(window_ids)
        sups = np.empty(len(windows))
        locations = np.empty(len(windows))
        for i, window in enumerate(windows):
            members = np.flatnonzero(window_ids == window)
            best = members[np.argmax(magnitudes[members])]
            sups[i], locations[i] = magnitudes[best], grid[best]
        profile = cls(grid, magnitudes, window_ids, windows, sups, locations)
        if len(windows) >= MIN_WINDOWS:
            gamma, residual = fit_exponent(profile, fit_range)
            profile.fitted_gamma = gamma
            profile.residual = residual
            profile.fit_range = _fit_range(profile, fit_range)
        else:
            logger.warning(
                f"only {len(windows)} dyadic windows, exponent left unfitted"
            )
        return profile

    def summary(self):
        return {
            "gamma_hat": self.fitted_gamma,
            "residual": self.residual,
            "fit_range": list(self.fit_range),
            "windows": [
                {"window_id": int(w), "sup": s, "xi": x}
                for w, s, x in zip(
                    self.windows.tolist(),
                    self.window_sups.tolist(),
                    self.window_locations.tolist(),
                )
            ],
        }


def _fit_range(profile, fit_range):
    if fit_range is None:
        return float(profile.grid[0]), float(profile.grid[-1])
    return float(fit_range[0]), float(fit_range[1])


def fit_exponent(profile, fit_range=None):
    """
    Least-squares decay exponent of the dyadic envelope.

    Regresses log(window sup) on the log of the frequency where each
    supremum is attained, restricted to ``fit_range``.

    Returns
    -------
    gamma_hat, residual : float
        Minus the slope, and the sum of squared log residuals.

    Raises
    ------
    InsufficientWindows
        Fewer than four windows inside the fit range.
    """
    lo, hi = _fit_range(profile, fit_range)
    mask = (profile.window_locations >= lo) & (profile.window_locations <= hi)
    if mask.sum() < MIN_WINDOWS:
        raise InsufficientWindows(
            f"{int(mask.sum())} dyadic windows in [{lo}, {hi}], need {MIN_WINDOWS}"
        )
    x = np.log(profile.window_locations[mask])
    y = np.log(np.maximum(profile.window_sups[mask], _TINY))
    fit = linregress(x, y)
    residual = float(np.sum((y - (fit.slope * x + fit.intercept)) ** 2))
    return float(-fit.slope), residual


def log_grid(xi_min, xi_max, points_per_decade=64):
    if not 0.0 < xi_min < xi_max:
        raise ValueError(f"need 0 < xi_min < xi_max, got {xi_min}, {xi_max}")
    if points_per_decade < 16:
        raise ValueError(f"points_per_decade must be >= 16, got {points_per_decade}")
    decades = math.ceil(math.log10(xi_max / xi_min) - 1e-12)
    return np.geomspace(xi_min, xi_max, decades * points_per_decade + 1)


def decay_profile(
    ifs,
    phase,
    weight,
    xi_min=1e2,
    xi_max=1e5,
    points_per_decade=64,
    tol=1e-4,
    method="transport",
    threads=1,
    frequencies=None,
    fit_range=None,
    budget=DEFAULT_ATOM_BUDGET,
    progress=False,
):
    """
    Sweep |oscillatory integral| over a logarithmic frequency grid.

    Frequencies are evaluated independently, optionally on a thread pool;
    the output does not depend on ``threads``. Pass ``frequencies`` to
    sample an explicit increasing grid instead.
    """
    if frequencies is None:
        grid = log_grid(xi_min, xi_max, points_per_decade)
    else:
        grid = np.asarray(frequencies, dtype=float)
    constants = hull_constants(phase, weight, ifs, plumbing=phase.linear)

    def evaluate(xi):
        result = oscillatory_detail(
            ifs, phase, weight, xi, tol, method, constants, budget
        )
        return abs(result.value)

    with tqdm(total=len(grid), disable=not progress, desc="decay") as bar:
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                magnitudes = []
                for value in pool.map(evaluate, grid.tolist()):
                    magnitudes.append(value)
                    bar.update()
        else:
            magnitudes = []
            for xi in grid.tolist():
                magnitudes.append(evaluate(xi))
                bar.update()

    profile = DecayProfile.from_samples(grid, magnitudes, fit_range)
    for window, sup in zip(profile.windows.tolist(), profile.window_sups.tolist()):
        logger.debug(f"window 2^{window}: sup {sup:.6g}")
    logger.info(f"fitted decay exponent {profile.fitted_gamma:.6g}")
    return profile


def write_profile_csv(profile, name):
    to_csv(
        zip(
            profile.grid.tolist(),
            profile.magnitudes.tolist(),
            profile.window_ids.tolist(),
        ),
        ("xi", "magnitude", "window_id"),
        name,
    )


def save_profile(profile, name):
    to_pickle(profile, name)


def load_profile(name):
    return from_pickle(name)
