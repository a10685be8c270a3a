"""Experiment commands."""
import click
import scipy.fft

from nsclab.cli.cli import nsclab as nsclab_cli
from nsclab.cli.util import GlobalOptions
from nsclab.configuration import Configuration
from nsclab.constants import (
    ENERGY_CHECK_EXPERIMENT,
    EXIT_CONFIGURATION_ERROR,
    EXIT_NUMERICAL_ABORT,
    EXIT_SUCCESS,
    KERNEL_BOUND,
    OSEEN_CONVERGENCE,
    ROSSBY_DECAY_EXPERIMENT,
    SIMULATE,
    STRICHARTZ_EXPERIMENT,
)
from nsclab.exceptions import (
    InvalidRunConfiguration,
    MissingCheckpoints,
    NsclabException,
    NumericalAbort,
)
from nsclab.experiments import run_experiment
from nsclab.print_util import experiment_title, print_boxed, print_summary, print_title
from nsclab.verbosity import is_silent


@nsclab_cli.command(SIMULATE)
@click.pass_context
def simulate_cli(ctx: click.Context) -> None:
    """Integrate the configured flow, writing monitors and checkpoints."""
    ctx.exit(__run(ctx.obj, SIMULATE))


@nsclab_cli.command(STRICHARTZ_EXPERIMENT)
@click.pass_context
def strichartz_cli(ctx: click.Context) -> None:
    """Sup-norm time integral of the linear Rossby flow against the rotation rate."""
    ctx.exit(__run(ctx.obj, STRICHARTZ_EXPERIMENT))


@nsclab_cli.command(KERNEL_BOUND)
@click.pass_context
def kernel_bound_cli(ctx: click.Context) -> None:
    """Sweep the dispersive kernel over heat and dispersion parameters."""
    ctx.exit(__run(ctx.obj, KERNEL_BOUND))


@nsclab_cli.command(OSEEN_CONVERGENCE)
@click.pass_context
def oseen_convergence_cli(ctx: click.Context) -> None:
    """
    Run the flow and measure the L1 distance of the rescaled vorticity to Oseen.

    The report is rebuilt from the checkpoints of the run.
    """
    ctx.exit(__run(ctx.obj, OSEEN_CONVERGENCE))


@nsclab_cli.command(ENERGY_CHECK_EXPERIMENT)
@click.pass_context
def energy_check_cli(ctx: click.Context) -> None:
    """Check the energy inequalities and the decay of vertical fluctuations."""
    ctx.exit(__run(ctx.obj, ENERGY_CHECK_EXPERIMENT))


@nsclab_cli.command(ROSSBY_DECAY_EXPERIMENT)
@click.pass_context
def rossby_decay_cli(ctx: click.Context) -> None:
    """Exact linear decay of the vertical fluctuation."""
    ctx.exit(__run(ctx.obj, ROSSBY_DECAY_EXPERIMENT))


def __run(options: GlobalOptions, experiment: str) -> int:
    """Returns exit code."""
    try:
        config = Configuration.load_run_config(
            options.config,
            experiment=experiment,
            output_dir=options.out,
            seed=options.seed,
        )
    except InvalidRunConfiguration as error:
        click.echo(f"Configuration error: {error}", err=True)
        return EXIT_CONFIGURATION_ERROR
    silent = is_silent(options.verbosity)
    if not silent:
        print_boxed(experiment_title(experiment), print_method=click.echo)
    try:
        with scipy.fft.set_workers(options.threads):
            result = run_experiment(config)
    except MissingCheckpoints as error:
        click.echo(f"{error} Was the run interrupted before writing any?", err=True)
        return EXIT_NUMERICAL_ABORT
    except NumericalAbort as error:
        click.echo(f"Numerical abort: {error}", err=True)
        return EXIT_NUMERICAL_ABORT
    except NsclabException as error:
        click.echo(f"Invalid input: {error}", err=True)
        return EXIT_CONFIGURATION_ERROR
    if not silent:
        click.echo()
        print_title("Summary", print_method=click.echo)
        print_summary(result.summary, print_method=click.echo)
        click.echo()
    click.echo(f"Outputs written to {config.output.output_dir}")
    click.echo(f"Manifest hash: {result.manifest.manifest_hash}")
    if not result.passed:
        click.echo(f"{experiment_title(experiment)} checks did not hold.")
    return EXIT_SUCCESS
