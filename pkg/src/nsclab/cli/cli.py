"""Main CLI for nsclab."""
from typing import Optional

import click

from nsclab import __version__
from nsclab.cli.util import (
    GlobalOptions,
    out_option,
    seed_option,
    silent_option,
    threads_option,
    verbose_option,
    verbosity_option,
)
from nsclab.constants import NSCLAB_CONFIG
from nsclab.verbosity import configure_logging


@click.group(no_args_is_help=True)
@click.version_option(version=__version__)
@click.option(
    "--config",
    envvar=NSCLAB_CONFIG,
    type=click.Path(exists=True, dir_okay=False),
    help="Run configuration file.",
)
@out_option
@threads_option
@seed_option
@silent_option
@verbose_option
@verbosity_option
@click.pass_context
def nsclab(  # pylint: disable=too-many-arguments
    ctx: click.Context,
    config: Optional[str],
    out: Optional[str],
    threads: int,
    seed: Optional[int],
    verbosity: str,
) -> None:
    """Nsclab is a Navier-Stokes-Coriolis solver and verification lab."""
    configure_logging(verbosity)
    ctx.obj = GlobalOptions(
        config=config, out=out, threads=threads, seed=seed, verbosity=verbosity
    )
