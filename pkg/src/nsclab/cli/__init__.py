"""CLI definitions."""
from nsclab.cli.cli import nsclab
from nsclab.cli.config import config_cli
from nsclab.cli.run import (
    energy_check_cli,
    kernel_bound_cli,
    oseen_convergence_cli,
    rossby_decay_cli,
    simulate_cli,
    strichartz_cli,
)

__all__ = [
    "nsclab",
    "config_cli",
    "simulate_cli",
    "strichartz_cli",
    "kernel_bound_cli",
    "oseen_convergence_cli",
    "energy_check_cli",
    "rossby_decay_cli",
]
