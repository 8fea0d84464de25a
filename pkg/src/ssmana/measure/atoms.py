import logging
import math
from dataclasses import dataclass, field

import numpy as np

from ..exceptions import BudgetExceeded
from ..serialization import to_csv
from .ifs import DerivedIFS

logger = logging.getLogger(__name__)

DEFAULT_ATOM_BUDGET = 10**8


@dataclass(frozen=True)
class DiscreteMeasure:
    """Finite atomic measure, positions sorted ascending."""

    positions: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    level: int = 0

    def __len__(self):
        return len(self.positions)

    @property
    def atoms(self):
        return list(zip(self.positions.tolist(), self.weights.tolist()))

    def min_gap(self):
        if len(self.positions) < 2:
            return math.inf
        return float(np.diff(self.positions).min())


@dataclass(frozen=True)
class TailSpec:
    """The tail measure: infinite convolution starting at ``rho**start_level``."""

    ifs: DerivedIFS
    start_level: int

    @property
    def base(self):
        return self.ifs.base

    @property
    def scale(self):
        return self.ifs.rho**self.start_level

    @property
    def diameter(self):
        a = self.ifs.translations
        return self.scale * (a.max() - a.min()) / (1.0 - self.ifs.rho)

    @property
    def support(self):
        """Hull of the tail support, ``rho**start_level`` times the attractor hull."""
        lo, hi = self.ifs.hull
        return self.scale * lo, self.scale * hi

    @property
    def center(self):
        lo, hi = self.support
        return 0.5 * (lo + hi)


def atom_count(ifs, level):
    return ifs.m ** (level + 1)


def check_budget(ifs, level, budget=DEFAULT_ATOM_BUDGET):
    count = atom_count(ifs, level)
    if count > budget:
        raise BudgetExceeded(
            f"level {level} needs {count} atoms, budget is {budget}",
            required=count,
            budget=budget,
        )
    return count


def level_atoms(ifs, level, budget=DEFAULT_ATOM_BUDGET):
    """
    Atoms of the level-N convolution approximant.

    Every atom is a sum over k = 0..N of rho**k * a_{j_k} carrying the
    weight prod_k p_{j_k}; the m**(N+1) atoms are returned sorted.
    """
    if level < 0:
        raise ValueError(f"level must be non-negative, got {level}")
    count = check_budget(ifs, level, budget)
    a, p = ifs.translations, ifs.probabilities
    positions = np.zeros(1)
    weights = np.ones(1)
    scale = 1.0
    for _ in range(level + 1):
        positions = np.add.outer(positions, scale * a).ravel()
        weights = np.multiply.outer(weights, p).ravel()
        scale *= ifs.rho
    order = np.argsort(positions, kind="stable")
    logger.debug(f"level {level}: {count} atoms")
    return DiscreteMeasure(positions[order], weights[order], level)


def split(ifs, level, budget=DEFAULT_ATOM_BUDGET):
    """Split the measure into the level-N atoms and the tail starting at N+1."""
    return level_atoms(ifs, level, budget), TailSpec(ifs, level + 1)


def write_atoms_csv(measure, name):
    to_csv(
        zip(measure.positions.tolist(), measure.weights.tolist()),
        ("position", "weight"),
        name,
    )
