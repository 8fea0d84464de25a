import logging

import click
import numpy as np

from ..fourier import mu_hat
from ..measure import level_atoms, write_atoms_csv
from ..serialization import format_float, to_csv
from .common import (
    common_options,
    fail_on_violations,
    handle_errors,
    load_config,
    output_path,
)

logger = logging.getLogger(__name__)


@click.command(name='transform')
@common_options
@click.option("--xi", type=float, multiple=True, help="frequency, repeatable")
@click.option("--dump-atoms", type=int, default=None, help="write the level-N atoms")
@handle_errors
def cli(config_source, seed, out, tol, threads, xi, dump_atoms):
    """Fourier transform of the self-similar measure at the given frequencies."""
    config = load_config(
        config_source,
        {
            "seed": seed,
            "out": out,
            "tol": tol,
            "threads": threads,
            "transform.xi": xi,
            "transform.dump_atoms": dump_atoms,
        },
    )
    ifs = config.build_ifs()
    frequencies = np.asarray(config.transform["xi"], dtype=float)
    values = np.atleast_1d(mu_hat(ifs, frequencies, config.tol))
    rows = [
        (x, z.real, z.imag, abs(z))
        for x, z in zip(frequencies.tolist(), values.tolist())
    ]
    to_csv(rows, ("xi", "re", "im", "abs"), output_path(config, "transform.csv"))
    for row in rows:
        click.echo("\t".join(format_float(v) for v in row))

    level = config.transform["dump_atoms"]
    if level is not None:
        measure = level_atoms(ifs, level, config.atom_budget)
        write_atoms_csv(measure, output_path(config, f"atoms_{level}.csv"))
        logger.info(f"wrote {len(measure)} atoms of level {level}")

    violations = []
    for x, z in zip(frequencies.tolist(), values.tolist()):
        if abs(z) > 1.0 + config.tol:
            violations.append({"check": "modulus", "xi": x, "abs": abs(z)})
        if x == 0.0 and z != 1.0:
            violations.append({"check": "origin", "xi": x, "value": [z.real, z.imag]})
    fail_on_violations(config, violations)
