"""Utility methods for CLI."""
from dataclasses import dataclass
from typing import Optional

import click

from nsclab.verbosity import DEFAULT_VERBOSITY, SILENT, VERBOSE, VERBOSITIES

out_option = click.option(
    "-o",
    "--out",
    type=click.Path(file_okay=False),
    default=None,
    help="Output directory, overrides [output] output_dir.",
)
threads_option = click.option(
    "-t",
    "--threads",
    type=click.IntRange(min=1),
    default=1,
    show_default=True,
    help="FFT worker threads.",
)
seed_option = click.option(
    "-s", "--seed", type=int, default=None, help="Overrides [init] seed."
)
verbosity_option = click.option(
    "--verbosity",
    type=click.Choice(VERBOSITIES, case_sensitive=False),
    default=DEFAULT_VERBOSITY,
    show_default=True,
)

silent_option = click.option(
    "--silent", "verbosity", flag_value=SILENT, help=f'Set verbosity to "{SILENT}".'
)

verbose_option = click.option(
    "--verbose", "verbosity", flag_value=VERBOSE, help=f'Set verbosity to "{VERBOSE}".'
)


@dataclass(frozen=True)
class GlobalOptions:
    """Options of the ``nsclab`` group, shared by every command."""

    config: Optional[str] = None
    out: Optional[str] = None
    threads: int = 1
    seed: Optional[int] = None
    verbosity: str = DEFAULT_VERBOSITY
