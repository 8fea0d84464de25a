import click
import numpy as np

from ..fourier import oscillatory_detail
from ..phase import hull_constants
from ..serialization import to_csv, to_json
from .common import (
    common_options,
    emit,
    fail_on_violations,
    handle_errors,
    load_config,
    output_path,
)


@click.command(name='oscillate')
@common_options
@click.option("--xi", type=float, multiple=True, help="frequency, repeatable")
@click.option(
    "--method", type=click.Choice(["transport", "linearized"]), default=None
)
@handle_errors
def cli(config_source, seed, out, tol, threads, xi, method):
    """The weighted oscillatory integral of the phase against the measure."""
    config = load_config(
        config_source,
        {
            "seed": seed,
            "out": out,
            "tol": tol,
            "threads": threads,
            "oscillate.xi": xi,
            "oscillate.method": method,
        },
    )
    ifs = config.build_ifs()
    phase, weight = config.build_phase(), config.build_weight()
    constants = hull_constants(phase, weight, ifs, plumbing=phase.linear)
    method = config.oscillate["method"]
    rows, violations = [], []
    for x in np.asarray(config.oscillate["xi"], dtype=float).tolist():
        result = oscillatory_detail(
            ifs,
            phase,
            weight,
            x,
            config.tol,
            method=method,
            constants=constants,
            budget=config.atom_budget,
        )
        z = result.value
        rows.append(
            (x, z.real, z.imag, abs(z), result.level, result.error_bound, result.atoms)
        )
        if result.error_bound > config.tol:
            violations.append(
                {"check": "error_bound", "xi": x, "bound": result.error_bound}
            )
    to_csv(
        rows,
        ("xi", "re", "im", "abs", "level", "error_bound", "atoms"),
        output_path(config, "oscillate.csv"),
    )
    summary = {"method": method, "tol": config.tol, "constants": constants.as_dict()}
    to_json(summary, output_path(config, "oscillate.json"))
    emit(summary)
    fail_on_violations(config, violations)
