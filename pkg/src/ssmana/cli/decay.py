import logging

import click

from ..exceptions import NoFeasiblePoint
from ..exponent import optimize_gamma
from ..fourier import decay_profile, save_profile, write_profile_csv
from ..serialization import to_json
from .common import common_options, emit, handle_errors, load_config, output_path

logger = logging.getLogger(__name__)


@click.command(name='decay')
@common_options
@click.option("--xi-min", type=float, default=None)
@click.option("--xi-max", type=float, default=None)
@click.option("--points-per-decade", type=int, default=None)
@click.option(
    "--method", type=click.Choice(["transport", "linearized"]), default=None
)
@click.option("--progress/--no-progress", default=False, help="show a progress bar")
@handle_errors
def cli(
    config_source,
    seed,
    out,
    tol,
    threads,
    xi_min,
    xi_max,
    points_per_decade,
    method,
    progress,
):
    """
    Decay profile of the oscillatory integral and its fitted exponent.

    Writes profile.csv, the archive profile.pkl.lz4 and the summary
    decay.json, which also carries the theoretical exponent for comparison.
    """
    config = load_config(
        config_source,
        {
            "seed": seed,
            "out": out,
            "threads": threads,
            "decay.tol": tol,
            "decay.xi_min": xi_min,
            "decay.xi_max": xi_max,
            "decay.points_per_decade": points_per_decade,
            "decay.method": method,
        },
    )
    ifs = config.build_ifs()
    phase, weight = config.build_phase(), config.build_weight()
    section = config.decay
    profile = decay_profile(
        ifs,
        phase,
        weight,
        xi_min=section["xi_min"],
        xi_max=section["xi_max"],
        points_per_decade=section["points_per_decade"],
        tol=section["tol"],
        method=section["method"],
        threads=config.threads,
        fit_range=section["fit_range"],
        budget=config.atom_budget,
        progress=progress,
    )
    write_profile_csv(profile, output_path(config, "profile.csv"))
    save_profile(profile, output_path(config, "profile.pkl.lz4"))

    summary = profile.summary()
    try:
        summary["gamma_star"] = optimize_gamma(ifs).gamma
    except NoFeasiblePoint as error:
        logger.warning(f"no theoretical exponent: {error}")
        summary["gamma_star"] = None
    to_json(summary, output_path(config, "decay.json"))
    emit({"gamma_hat": summary["gamma_hat"], "gamma_star": summary["gamma_star"]})
