import logging

import click

from ..normality import normality_report, write_digit_csv
from ..serialization import to_json
from .common import common_options, emit, handle_errors, load_config, output_path

logger = logging.getLogger(__name__)


@click.command(name='normality')
@common_options
@click.option("--base", "bases", type=int, multiple=True, help="digit base")
@click.option("--samples", type=int, default=None, help="number of sample points")
@click.option("--digits", type=int, default=None, help="digits per sample")
@click.option("--h", "h_list", type=int, multiple=True, help="frequency multiplier")
@click.option("--del-n-max", type=int, default=None)
@handle_errors
def cli(
    config_source, seed, out, tol, threads, bases, samples, digits, h_list, del_n_max
):
    """
    Digit statistics, Weyl sums and summability partials of phi(x), x ~ mu.

    One report per base: normality_<b>.json with digits_<b>.csv.
    """
    config = load_config(
        config_source,
        {
            "seed": seed,
            "out": out,
            "threads": threads,
            "normality.tol": tol,
            "normality.bases": bases,
            "normality.sample_count": samples,
            "normality.digit_count": digits,
            "normality.h": h_list,
            "normality.del_n_max": del_n_max,
        },
    )
    ifs = config.build_ifs()
    phase, weight = config.build_phase(), config.build_weight()
    section = config.normality
    summary = {}
    for base in section["bases"]:
        report = normality_report(
            ifs,
            phase,
            base,
            config.seed,
            sample_count=section["sample_count"],
            digit_count=section["digit_count"],
            seq=config.build_sequence(base),
            h_list=section["h"],
            digit_offset=section["digit_offset"],
            weyl_samples=section["weyl_samples"],
            weyl_n=section["weyl_n"],
            del_n_max=section["del_n_max"],
            del_seq=config.build_del_sequence(),
            tol=section["tol"],
            weight=weight,
            threads=config.threads,
        )
        doc = report.as_dict()
        to_json(doc, output_path(config, f"normality_{base}.json"))
        write_digit_csv(report.table, output_path(config, f"digits_{base}.csv"))
        summary[str(base)] = {
            "frequencies": doc["digit_frequencies"],
            "within_band": doc["within_band"],
            "digit_positions": doc["digit_positions"],
            "del_slopes": doc["del_slopes"],
        }
    emit(summary)
