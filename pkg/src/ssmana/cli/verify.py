import click

from ..serialization import to_json
from ..verification import CHECKS, run_checks
from .common import (
    common_options,
    emit,
    fail_on_violations,
    handle_errors,
    load_config,
    output_path,
)


@click.command(name='verify')
@common_options
@click.option(
    "--check",
    "names",
    type=click.Choice(sorted(CHECKS)),
    multiple=True,
    help="run only this check, repeatable",
)
@click.option("--progress/--no-progress", default=False)
@handle_errors
def cli(config_source, seed, out, tol, threads, names, progress):
    """Run the invariant battery; exit status 1 lists the violations."""
    config = load_config(
        config_source, {"seed": seed, "out": out, "tol": tol, "threads": threads}
    )
    names = list(names) or sorted(CHECKS)
    violations = run_checks(names, seed=config.seed, progress=progress)
    doc = {"checks": names, "seed": config.seed, "violations": len(violations)}
    to_json(doc, output_path(config, "verify.json"))
    emit(doc)
    fail_on_violations(config, violations)
