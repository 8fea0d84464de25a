"""Named experiment documents usable wherever a config file is accepted."""

import copy

from .ifs import from_dict

CANTOR_IFS = {"rho": 1 / 3, "translations": [0.0, 2 / 3], "probabilities": [0.5, 0.5]}

PRESETS = {
    "cantor": {
        "ifs": CANTOR_IFS,
    },
    "cantor_x2": {
        "ifs": CANTOR_IFS,
        "phase": {"kind": "quadratic", "coefficients": [1.0, 0.0, 0.0]},
        "weight": {"kind": "constant", "coefficients": [1.0]},
    },
    "biased3": {
        "ifs": {
            "rho": 0.2,
            "translations": [0.0, 0.4, 0.8],
            "probabilities": [0.5, 0.3, 0.2],
        },
    },
    "quarter": {
        "ifs": {"rho": 0.25, "translations": [0.0, 0.75], "probabilities": [0.6, 0.4]},
    },
    "shifted": {
        "ifs": {"rho": 0.3, "translations": [1.0, 2.5], "probabilities": [0.3, 0.7]},
    },
    "bernoulli45": {
        "ifs": {"rho": 0.45, "translations": [0.0, 0.55], "probabilities": [0.5, 0.5]},
    },
}

REFERENCE_IFS_NAMES = ("cantor", "biased3", "quarter", "shifted", "bernoulli45")


def preset(name):
    """A fresh copy of a named document; ``KeyError`` lists the known names."""
    try:
        return copy.deepcopy(PRESETS[name])
    except KeyError:
        raise KeyError(f"unknown preset {name!r}, known: {sorted(PRESETS)}") from None


def preset_ifs(name):
    return from_dict(preset(name)["ifs"])


def reference_ifs():
    """The validated IFSs used by the invariant checks."""
    return {name: preset_ifs(name) for name in REFERENCE_IFS_NAMES}
