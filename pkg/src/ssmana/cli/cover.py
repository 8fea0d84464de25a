import logging

import click

from ..erdos import verify_cover
from ..serialization import to_csv, to_json
from .common import (
    common_options,
    emit,
    fail_on_violations,
    handle_errors,
    load_config,
    output_path,
)

logger = logging.getLogger(__name__)


@click.command(name='cover')
@common_options
@click.option("--c0", type=float, default=None)
@click.option("--theta", type=float, default=None)
@click.option("--epsilon", type=float, default=None)
@click.option("--N", "length", type=int, default=None, help="orbit length")
@click.option("--range", "h_range", type=float, nargs=2, default=None, help="H1 H2")
@click.option("--grid-points", type=int, default=None)
@handle_errors
def cli(
    config_source,
    seed,
    out,
    tol,
    threads,
    c0,
    theta,
    epsilon,
    length,
    h_range,
    grid_points,
):
    """Interval cover of the near-integer orbit set, checked by brute force."""
    h1, h2 = h_range if h_range else (None, None)
    config = load_config(
        config_source,
        {
            "seed": seed,
            "out": out,
            "tol": tol,
            "threads": threads,
            "cover.c0": c0,
            "cover.theta": theta,
            "cover.epsilon": epsilon,
            "cover.N": length,
            "cover.H1": h1,
            "cover.H2": h2,
            "cover.grid_points": grid_points,
        },
    )
    ifs = config.build_ifs() if config.ifs is not None else None
    cover_config = config.build_cover(ifs)
    report, result = verify_cover(
        cover_config,
        grid_points=config.cover["grid_points"],
        node_budget=config.node_budget,
        strict=False,
    )
    to_csv(result.intervals, ("left", "right"), output_path(config, "cover.csv"))
    doc = report.as_dict()
    doc["config"] = {
        "c0": cover_config.c0,
        "theta": cover_config.theta,
        "epsilon": cover_config.epsilon,
        "N": cover_config.N,
        "H1": cover_config.H1,
        "H2": cover_config.H2,
    }
    doc["nodes"] = result.nodes
    to_json(doc, output_path(config, "cover.json"))
    emit({key: doc[key] for key in ("count", "bound", "members", "ok")})

    violations = [{"check": "uncovered", "x": x} for x in report.violations]
    if report.count > report.bound:
        violations.append(
            {"check": "count", "count": report.count, "bound": report.bound}
        )
    if report.max_children > int(cover_config.theta) + 2:
        violations.append({"check": "children", "children": report.max_children})
    fail_on_violations(config, violations)
