"""
Experiment configuration shared by every subcommand.

A configuration is a JSON document (or the name of a built-in preset)
with one section per concern. Command-line flags are applied on top of
it with ``ExperimentConfig.override``; flags always win.
"""

import copy
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict

from ..exceptions import ConfigError
from ..measure import DEFAULT_ATOM_BUDGET, PRESETS, from_dict, preset
from ..erdos import DEFAULT_NODE_BUDGET, CoverConfig
from ..normality import SequenceSpec
from ..phase import PhaseSpec, WeightSpec
from ..serialization import from_json

logger = logging.getLogger(__name__)

NUMBER = (int, float)
OPTIONAL_NUMBER = (int, float, type(None))

# section -> key -> (accepted types, default)
SCHEMA = {
    "phase": {
        "kind": (str, "quadratic"),
        "coefficients": (list, [1.0, 0.0, 0.0]),
    },
    "weight": {
        "kind": (str, "constant"),
        "coefficients": (list, [1.0]),
    },
    "transform": {
        "xi": (list, [0.0]),
        "dump_atoms": ((int, type(None)), None),
    },
    "oscillate": {
        "xi": (list, [1.0, 10.0, 100.0]),
        "method": (str, "transport"),
    },
    "decay": {
        "xi_min": (NUMBER, 1e2),
        "xi_max": (NUMBER, 1e5),
        "points_per_decade": (int, 64),
        "tol": (NUMBER, 1e-4),
        "method": (str, "transport"),
        "fit_range": ((list, type(None)), None),
    },
    "gamma": {
        "resolution": (int, 200),
        "delta": (OPTIONAL_NUMBER, None),
        "xi": (OPTIONAL_NUMBER, None),
    },
    "cover": {
        "c0": (NUMBER, 1.0),
        "theta": (OPTIONAL_NUMBER, None),
        "epsilon": (NUMBER, 0.3),
        "N": (int, 8),
        "H1": (NUMBER, 1.0),
        "H2": (NUMBER, 2.0),
        "grid_points": ((int, type(None)), None),
    },
    "normality": {
        "bases": (list, [2, 3]),
        "sample_count": (int, 10**4),
        "digit_count": (int, 30),
        "digit_offset": (int, 20),
        "sequence": ((dict, type(None)), None),
        "del_sequence": ((dict, type(None)), None),
        "h": (list, [1]),
        "weyl_samples": (int, 1000),
        "weyl_n": (int, 1000),
        "del_n_max": (int, 200),
        "tol": (NUMBER, 1e-4),
    },
}

TOP_LEVEL = {
    "seed": (int, 0),
    "tol": (NUMBER, 1e-6),
    "threads": (int, 1),
    "out": (str, "."),
    "atom_budget": (int, DEFAULT_ATOM_BUDGET),
    "node_budget": (int, DEFAULT_NODE_BUDGET),
}


def _check_type(address, value, types):
    if isinstance(value, bool) or not isinstance(value, types):
        names = (
            types.__name__
            if isinstance(types, type)
            else "/".join(t.__name__ for t in types)
        )
        raise ConfigError(f"{address}: expected {names}, got {value!r}")


def _section(name, doc):
    schema = SCHEMA[name]
    if not isinstance(doc, dict):
        raise ConfigError(f"{name}: expected an object, got {type(doc).__name__}")
    unknown = set(doc) - set(schema)
    if unknown:
        raise ConfigError(f"{name}.{sorted(unknown)[0]}: unknown key")
    result = {}
    for key, (types, default) in schema.items():
        value = doc.get(key, copy.deepcopy(default))
        _check_type(f"{name}.{key}", value, types)
        result[key] = value
    return result


@dataclass
class ExperimentConfig:
    ifs: Dict[str, Any] = None
    phase: Dict[str, Any] = field(default_factory=dict)
    weight: Dict[str, Any] = field(default_factory=dict)
    transform: Dict[str, Any] = field(default_factory=dict)
    oscillate: Dict[str, Any] = field(default_factory=dict)
    decay: Dict[str, Any] = field(default_factory=dict)
    gamma: Dict[str, Any] = field(default_factory=dict)
    cover: Dict[str, Any] = field(default_factory=dict)
    normality: Dict[str, Any] = field(default_factory=dict)
    seed: int = 0
    tol: float = 1e-6
    threads: int = 1
    out: str = "."
    atom_budget: int = DEFAULT_ATOM_BUDGET
    node_budget: int = DEFAULT_NODE_BUDGET

    @classmethod
    def from_dict(cls, doc):
        if not isinstance(doc, dict):
            raise ConfigError(
                f"configuration must be an object, got {type(doc).__name__}"
            )
        known = set(SCHEMA) | set(TOP_LEVEL) | {"ifs"}
        unknown = set(doc) - known
        if unknown:
            raise ConfigError(f"{sorted(unknown)[0]}: unknown key")
        values = {name: _section(name, doc.get(name, {})) for name in SCHEMA}
        for key, (types, default) in TOP_LEVEL.items():
            value = doc.get(key, default)
            _check_type(key, value, types)
            values[key] = value
        ifs = doc.get("ifs")
        if ifs is not None and not isinstance(ifs, dict):
            raise ConfigError(f"ifs: expected an object, got {type(ifs).__name__}")
        config = cls(ifs=copy.deepcopy(ifs), **values)
        config.check()
        return config

    @classmethod
    def load(cls, source=None):
        """
        Load a preset name, a JSON file path, or the empty configuration.

        Raises
        ------
        ConfigError
            Unreadable file, invalid JSON (with line and column) or an
            invalid field.
        """
        if source is None:
            return cls.from_dict({})
        if source in PRESETS:
            logger.info(f"using preset {source}")
            return cls.from_dict(preset(source))
        path = Path(source)
        if not path.is_file():
            names = ", ".join(sorted(PRESETS))
            raise ConfigError(f"{source}: neither a preset ({names}) nor a file")
        try:
            doc = from_json(path)
        except json.JSONDecodeError as error:
            raise ConfigError(
                f"{source}:{error.lineno}:{error.colno}: {error.msg}"
            ) from None
        return cls.from_dict(doc)

    def check(self):
        """Fail early on values the modules would reject."""
        if self.seed < 0:
            raise ConfigError(f"seed: must be non-negative, got {self.seed}")
        if not 0.0 < self.tol < 1.0:
            raise ConfigError(f"tol: must lie in (0, 1), got {self.tol}")
        if self.threads < 1:
            raise ConfigError(f"threads: must be at least 1, got {self.threads}")
        if self.ifs is not None:
            self.build_ifs()
        self.build_phase()
        self.build_weight()
        if self.normality["sequence"] is not None:
            self.build_sequence()
        self.build_del_sequence()

    def override(self, flags):
        """
        Apply command-line values given as ``{"key": v}`` or
        ``{"section.key": v}``; ``None`` means the flag was not given.
        """
        for key, value in flags.items():
            if value is None or value == ():
                continue
            if isinstance(value, tuple):
                value = list(value)
            section, _, name = key.rpartition(".")
            if section:
                getattr(self, section)[name] = value
            else:
                setattr(self, name, value)
        self.check()
        return self

    def build_ifs(self):
        if self.ifs is None:
            raise ConfigError("ifs: section required, use a preset or a config file")
        try:
            return from_dict(self.ifs)
        except (KeyError, ValueError, TypeError) as error:
            raise ConfigError(f"ifs: {error}") from None

    def build_phase(self):
        try:
            return PhaseSpec.from_dict(self.phase)
        except (ValueError, TypeError) as error:
            raise ConfigError(f"phase: {error}") from None

    def build_weight(self):
        try:
            return WeightSpec.from_dict(self.weight)
        except (ValueError, TypeError) as error:
            raise ConfigError(f"weight: {error}") from None

    def _sequence(self, key, default):
        doc = self.normality[key]
        try:
            return default() if doc is None else SequenceSpec.from_dict(doc)
        except (ValueError, TypeError) as error:
            raise ConfigError(f"normality.{key}: {error}") from None

    def build_sequence(self, base=None):
        """Weyl sum sequence, s_n = base**n unless configured."""
        return self._sequence("sequence", lambda: SequenceSpec("geometric", (base,)))

    def build_del_sequence(self):
        """Summability sequence, s_n = n unless configured."""
        return self._sequence("del_sequence", SequenceSpec)

    def build_cover(self, ifs=None):
        section = self.cover
        theta = section["theta"]
        if theta is None:
            theta = ifs.theta if ifs is not None else 3.0
        try:
            return CoverConfig(
                c0=float(section["c0"]),
                theta=float(theta),
                epsilon=float(section["epsilon"]),
                N=int(section["N"]),
                H1=float(section["H1"]),
                H2=float(section["H2"]),
            )
        except ValueError as error:
            raise ConfigError(f"cover: {error}") from None

    def as_dict(self):
        return {
            "ifs": self.ifs,
            "phase": self.phase,
            "weight": self.weight,
            "transform": self.transform,
            "oscillate": self.oscillate,
            "decay": self.decay,
            "gamma": self.gamma,
            "cover": self.cover,
            "normality": self.normality,
            "seed": self.seed,
            "tol": self.tol,
            "threads": self.threads,
            "out": self.out,
            "atom_budget": self.atom_budget,
            "node_budget": self.node_budget,
        }
