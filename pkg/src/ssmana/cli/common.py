import functools
import json
import logging
from pathlib import Path

import click

from ..exceptions import ConfigError, SSManaError
from ..serialization import plain, to_json
from .config import ExperimentConfig

logger = logging.getLogger(__name__)


def common_options(func):
    """--config, --seed, --out, --tol and --threads, shared by every subcommand."""
    options = [
        click.option(
            "--config",
            "config_source",
            type=str,
            default=None,
            help="JSON config file or preset name",
        ),
        click.option("--seed", type=int, default=None, help="random seed"),
        click.option(
            "--out",
            type=click.Path(file_okay=False),
            default=None,
            help="output directory",
        ),
        click.option("--tol", type=float, default=None, help="error tolerance"),
        click.option("--threads", type=int, default=None, help="worker threads"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def load_config(config_source, flags):
    """Load the configuration and apply flag overrides."""
    config = ExperimentConfig.load(config_source)
    return config.override(flags)


def handle_errors(func):
    """
    Map configuration and parameter errors to exit status 2, and runtime
    failures of the library (budgets, oracles) to exit status 1 with a
    machine-readable violation on stdout.
    """

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            return func(*args, **kwargs)
        except ConfigError as error:
            click.echo(f"configuration error: {error}", err=True)
            ctx.exit(2)
        except ValueError as error:
            click.echo(f"invalid parameter: {error}", err=True)
            ctx.exit(2)
        except SSManaError as error:
            click.echo(f"{type(error).__name__}: {error}", err=True)
            emit([{"check": type(error).__name__, "message": str(error)}])
            ctx.exit(1)

    return wrapper


def output_path(config, name):
    path = Path(config.out) / name
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def emit(doc):
    click.echo(json.dumps(plain(doc), sort_keys=True))


def fail_on_violations(config, violations):
    """Write ``violations.json`` and exit with status 1 when there are any."""
    if not violations:
        return
    to_json(violations, output_path(config, "violations.json"))
    click.echo(json.dumps(plain(violations), sort_keys=True))
    logger.error(f"{len(violations)} invariant violations")
    click.get_current_context().exit(1)
