"""Config CLI."""
import click
import toml

from nsclab.cli.cli import nsclab as nsclab_cli
from nsclab.configuration import Configuration
from nsclab.constants import EXIT_CONFIGURATION_ERROR
from nsclab.exceptions import InvalidRunConfiguration


@nsclab_cli.group("config")
def config_cli():
    """Configuration related actions."""


@config_cli.command("show")
@click.pass_context
def show_config(ctx: click.Context):
    """Print the run configuration merged over the defaults, as TOML."""
    options = ctx.obj
    try:
        config = Configuration.load_run_config(
            options.config, output_dir=options.out, seed=options.seed
        )
    except InvalidRunConfiguration as error:
        click.echo(f"Configuration error: {error}", err=True)
        ctx.exit(EXIT_CONFIGURATION_ERROR)
    click.echo(toml.dumps(config.as_dict()))


@config_cli.command("defaults")
def print_defaults():
    """Print every configuration key with its default value."""
    click.echo(toml.dumps(Configuration.default_configuration()))
