"""Run with the fluctuation split into a low-frequency Rossby part and a remainder."""
import logging
from typing import Optional

from nsclab.artifacts import Artifacts
from nsclab.calculus import vertical_average
from nsclab.configuration import RunConfig
from nsclab.constants import MONITORS_FILE
from nsclab.fields import SpectralVectorField
from nsclab.monitors import MONITOR_COLUMNS, energy_monitors
from nsclab.rossby import CutoffBall, fourier_cutoff, rossby_propagate
from nsclab.solver import (
    Trajectory,
    initial_state,
    integrate,
    nonlinear_rhs,
    zero_rhs,
)
from nsclab.state import FlowState

logger = logging.getLogger(__name__)


def lambda_r_split_run(
    config: RunConfig,
    radius: float,
    artifacts: Optional[Artifacts] = None,
    initial: Optional[FlowState] = None,
) -> Trajectory:
    """
    Evolve ``lambda`` exactly by the Rossby flow and ``ubar + r`` by the stepper.

    ``lambda(0) = P_R u~(0)`` and ``r(0) = (1 - P_R) u~(0)``. The stepped variable
    ``v = ubar + r`` is forced by the nonlinear term of ``v + lambda(t)``, so ``v +
    lambda`` follows the unsplit dynamics. ``radius = 0`` means no Rossby part.

    :param config: run configuration
    :param radius: cutoff radius ``R >= 0``
    :param artifacts: output directory for checkpoints of the full velocity
     and monitors
    :param initial: initial state, built from the configured recipe if omitted
    :return: :class:`Trajectory` of the full velocity with the sampled ``lambda``
    """
    state = initial_state(config) if initial is None else initial
    decomposition = vertical_average(state.u)
    if radius == 0:
        lambda0 = SpectralVectorField.zeros(state.grid)
        remainder = decomposition.tilde
    else:
        lambda0, remainder = fourier_cutoff(decomposition.tilde, CutoffBall(radius))
    t0 = state.t
    omega = state.omega

    def rossby_part(t: float) -> SpectralVectorField:
        return rossby_propagate(lambda0, t - t0, omega)

    def full_state(evolved: FlowState) -> FlowState:
        return evolved.advance(evolved.u + rossby_part(evolved.t), evolved.t)

    def forcing(evolved: FlowState) -> SpectralVectorField:
        return nonlinear_rhs(full_state(evolved))

    rhs = forcing if config.physics.nonlinear else zero_rhs
    evolved = state.advance(decomposition.bar + remainder, t0)
    logger.info("Split run with R=%g", radius)
    states, checkpoints = integrate(evolved, config, rhs, artifacts, observe=full_state)
    lambdas = [rossby_part(sample.t) for sample in states]
    monitors = energy_monitors(states, lambdas, config.monitors)
    if artifacts is not None:
        artifacts.write_csv(MONITORS_FILE, MONITOR_COLUMNS, monitors.as_rows())
    return Trajectory(
        states=states, monitors=monitors, checkpoints=checkpoints, lambdas=lambdas
    )


def remainders(trajectory: Trajectory):
    """``r(t) = u~(t) - lambda(t)`` along a split trajectory."""
    return [
        vertical_average(state.u).tilde - lam
        for state, lam in zip(trajectory.states, trajectory.lambdas)
    ]
