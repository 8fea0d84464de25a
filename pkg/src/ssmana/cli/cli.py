import logging

import click

from ..version import __version__
from . import cover, decay, gamma, normality, oscillate, transform, verify

LOG_FORMAT = "%(asctime)s %(levelname)4s: %(message)s"


@click.group(context_settings=dict(help_option_names=['-h', '--help']))
@click.version_option(version=__version__)
@click.option("-v", "--verbose", count=True, help="-v for info, -vv for debug")
def ssmana(verbose):
    level = logging.WARNING - 10 * min(verbose, 2)
    logging.basicConfig(format=LOG_FORMAT, level=level)
    logging.getLogger("ssmana").setLevel(level)


ssmana.add_command(transform.cli)
ssmana.add_command(oscillate.cli)
ssmana.add_command(decay.cli)
ssmana.add_command(gamma.cli)
ssmana.add_command(cover.cli)
ssmana.add_command(normality.cli)
ssmana.add_command(verify.cli)
