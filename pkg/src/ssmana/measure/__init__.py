from .ifs import IFSSpec, DerivedIFS, validate, from_dict, bernoulli, attractor_hull
from .atoms import (
    DEFAULT_ATOM_BUDGET,
    DiscreteMeasure,
    TailSpec,
    atom_count,
    level_atoms,
    split,
    write_atoms_csv,
)
from .presets import PRESETS, REFERENCE_IFS_NAMES, preset, preset_ifs, reference_ifs
from .sampling import (
    sample,
    sample_exact,
    sample_indices,
    rationalize,
    minimal_digits,
    make_rng,
)

__all__ = [
    "IFSSpec",
    "DerivedIFS",
    "validate",
    "from_dict",
    "bernoulli",
    "attractor_hull",
    "DEFAULT_ATOM_BUDGET",
    "DiscreteMeasure",
    "TailSpec",
    "atom_count",
    "level_atoms",
    "split",
    "write_atoms_csv",
    "sample",
    "sample_exact",
    "sample_indices",
    "rationalize",
    "minimal_digits",
    "make_rng",
    "PRESETS",
    "REFERENCE_IFS_NAMES",
    "preset",
    "preset_ifs",
    "reference_ifs",
]
