import click

from ..exceptions import NoFeasiblePoint
from ..exponent import (
    ExponentProblem,
    frequency_scales,
    optimize_gamma,
    theoretical_rates,
)
from ..fourier import bad_step_bound
from ..serialization import to_json
from .common import (
    common_options,
    emit,
    fail_on_violations,
    handle_errors,
    load_config,
    output_path,
)


@click.command(name='gamma')
@common_options
@click.option("--resolution", type=int, default=None, help="grid points per axis")
@click.option("--delta", type=float, default=None, help="override the contraction")
@click.option(
    "--sharp-delta", is_flag=True, help="use the sharp bad-step bound as delta"
)
@click.option("--xi", type=float, default=None, help="report the level split at xi")
@handle_errors
def cli(config_source, seed, out, tol, threads, resolution, delta, sharp_delta, xi):
    """Optimal decay exponent over the feasible (beta, epsilon) region."""
    config = load_config(
        config_source,
        {
            "seed": seed,
            "out": out,
            "tol": tol,
            "threads": threads,
            "gamma.resolution": resolution,
            "gamma.delta": delta,
            "gamma.xi": xi,
        },
    )
    ifs = config.build_ifs()
    section = config.gamma
    delta = bad_step_bound(ifs) if sharp_delta else section["delta"]
    problem = ExponentProblem.from_ifs(ifs, delta)
    doc = {
        "rho": problem.rho,
        "alpha": problem.alpha,
        "delta": problem.delta,
        "sharp_delta": bad_step_bound(ifs),
    }
    violations = []
    try:
        solution = optimize_gamma(ifs, section["resolution"], delta)
    except NoFeasiblePoint as error:
        violations.append({"check": "feasibility", "message": str(error)})
    else:
        doc["solution"] = solution.as_dict()
        doc["rates"] = theoretical_rates(solution, ifs, delta)
        if section["xi"] is not None:
            n1, n2, n = frequency_scales(ifs, solution.beta, section["xi"])
            doc["levels"] = {"xi": section["xi"], "N1": n1, "N2": n2, "N": n}
        if solution.feasibility_slack <= 0.0:
            violations.append(
                {"check": "feasibility", "slack": solution.feasibility_slack}
            )
    to_json(doc, output_path(config, "gamma.json"))
    emit(doc)
    fail_on_violations(config, violations)
