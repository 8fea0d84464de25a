import logging
import math
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from ..exceptions import (
    DegenerateTranslations,
    ProbabilityInvalid,
    RatioOutOfRange,
    SeparationFailed,
)

logger = logging.getLogger(__name__)

PROBABILITY_TOL = 1e-12


@dataclass(frozen=True)
class IFSSpec:
    """Homogeneous IFS {rho * x + a_j} with weights p_j."""

    rho: float
    translations: Tuple[float, ...]
    probabilities: Tuple[float, ...]

    @property
    def m(self):
        return len(self.translations)

    def as_dict(self):
        return {
            "rho": self.rho,
            "translations": list(self.translations),
            "probabilities": list(self.probabilities),
        }


@dataclass(frozen=True)
class DerivedIFS:
    """
    A validated IFS together with the constants the decay estimates use.

    ``l_index``/``s_index`` point at the translations a_l > a_s of the
    selected max/min-probability maps, ``hull`` is the smallest interval
    containing the attractor.
    """

    base: IFSSpec
    theta: float
    l_index: int
    s_index: int
    p_l: float
    p_s: float
    a_l: float
    a_s: float
    alpha: float
    delta: float
    hull: Tuple[float, float]
    translations: np.ndarray = field(repr=False, compare=False)
    probabilities: np.ndarray = field(repr=False, compare=False)

    @property
    def rho(self):
        return self.base.rho

    @property
    def m(self):
        return self.base.m

    @property
    def hull_diameter(self):
        return self.hull[1] - self.hull[0]

    @property
    def translation_spread(self):
        return self.a_l - self.a_s

    @property
    def max_abs_translation(self):
        return float(np.max(np.abs(self.translations)))

    def doubled_hull(self):
        """The hull dilated by factor 2 about its center."""
        lo, hi = self.hull
        center, half = 0.5 * (lo + hi), hi - lo
        return center - half, center + half


def attractor_hull(rho, translations):
    a = np.asarray(translations, dtype=float)
    return float(a.min() / (1.0 - rho)), float(a.max() / (1.0 - rho))


def _select_pair(translations, probabilities):
    p_max, p_min = probabilities.max(), probabilities.min()
    max_idx = np.flatnonzero(probabilities == p_max)
    min_idx = np.flatnonzero(probabilities == p_min)
    best = None
    for i in max_idx:
        for j in min_idx:
            spread = abs(translations[i] - translations[j])
            if best is None or spread > best[0]:
                best = (spread, int(i), int(j))
    if best is None or best[0] == 0.0:
        raise DegenerateTranslations(
            "every max/min-probability translation pair coincides"
        )
    _, l_index, s_index = best
    if translations[l_index] < translations[s_index]:
        l_index, s_index = s_index, l_index
    return l_index, s_index


def validate(rho, translations, probabilities):
    """
    Validate raw IFS parameters and derive the decay constants.

    Parameters
    ----------
    rho : float
        Contraction ratio, must lie in (0, 1/m).
    translations : sequence of float
        The m translations a_j.
    probabilities : sequence of float
        The m weights p_j, positive and summing to one within 1e-12.

    Returns
    -------
    DerivedIFS

    Raises
    ------
    RatioOutOfRange, ProbabilityInvalid, SeparationFailed, DegenerateTranslations
    """
    a = np.array(translations, dtype=float)
    p = np.array(probabilities, dtype=float)
    if a.ndim != 1 or p.ndim != 1 or len(a) != len(p):
        raise ValueError("translations and probabilities must be equal length lists")
    m = len(a)
    if m < 2:
        raise ValueError(f"an IFS needs at least two maps, got {m}")
    rho = float(rho)
    if not (0.0 < rho < 1.0 / m):
        raise RatioOutOfRange(f"rho={rho} outside (0, 1/{m})")
    if not np.all(np.isfinite(a)):
        raise ValueError("translations must be finite")
    if not np.all(np.isfinite(p)) or np.any(p <= 0.0):
        raise ProbabilityInvalid(f"probabilities must be positive, got {p.tolist()}")
    total = math.fsum(p)
    if abs(total - 1.0) > PROBABILITY_TOL:
        raise ProbabilityInvalid(f"probabilities sum to {total!r}, not 1")
    p = p / total

    lo, hi = attractor_hull(rho, a)
    gaps = np.diff(np.sort(a))
    width = rho * (hi - lo)
    if np.any(gaps <= width):
        raise SeparationFailed(
            f"hull images overlap: min translation gap {gaps.min()!r} "
            f"<= rho*(B-A) = {width!r}"
        )

    l_index, s_index = _select_pair(a, p)
    theta = 1.0 / rho
    p_l, p_s = float(p.max()), float(p.min())
    derived = DerivedIFS(
        base=IFSSpec(rho, tuple(a.tolist()), tuple(p.tolist())),
        theta=theta,
        l_index=l_index,
        s_index=s_index,
        p_l=p_l,
        p_s=p_s,
        a_l=float(a[l_index]),
        a_s=float(a[s_index]),
        alpha=math.log(p_l) / math.log(rho),
        delta=1.0 - 2.0 * p_l / (1.0 + theta),
        hull=(lo, hi),
        translations=a,
        probabilities=p,
    )
    logger.debug(f"validated {derived}")
    return derived


def from_dict(doc):
    """Build a DerivedIFS from a ``{rho, translations, probabilities}`` mapping."""
    missing = {"rho", "translations", "probabilities"} - set(doc)
    if missing:
        raise KeyError(f"IFS document missing keys {sorted(missing)}")
    return validate(doc["rho"], doc["translations"], doc["probabilities"])


def bernoulli(rho):
    """Bernoulli convolution with hull [0, 1], translations (0, 1 - rho)."""
    return validate(rho, (0.0, 1.0 - rho), (0.5, 0.5))
