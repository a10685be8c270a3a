"""Pseudo-spectral integrating-factor time stepping of the rotating system."""
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, List, Optional, Tuple

import numpy as np

from nsclab.artifacts import Artifacts
from nsclab.calculus import (
    cross_product_physical,
    curl,
    leray_project,
    relative_divergence,
    vertical_average,
)
from nsclab.checkpoint import write_checkpoint
from nsclab.configuration import RunConfig
from nsclab.constants import (
    CFL_NUMBER,
    DIVERGENCE_TOLERANCE,
    IFRK2,
    IFRK4,
    MONITORS_FILE,
)
from nsclab.exceptions import (
    CflViolation,
    DivergenceViolation,
    InvalidRunConfiguration,
    NonFiniteState,
)
from nsclab.fields import (
    SpectralField,
    SpectralVectorField,
    forward_transform,
    inverse_transform,
)
from nsclab.grid import Grid
from nsclab.initial_data import make_initial_data
from nsclab.monitors import MONITOR_COLUMNS, EnergyMonitors, energy_monitors
from nsclab.oseen import periodized_vorticity_samples, sampled_velocity
from nsclab.rossby import rossby_propagate
from nsclab.state import FlowState, max_speed

logger = logging.getLogger(__name__)

RightHandSide = Callable[[FlowState], SpectralVectorField]


def nonlinear_rhs(state: FlowState) -> SpectralVectorField:
    """
    ``-P((u.grad)u) = P(u x w)``, evaluated pseudo-spectrally with 2/3 dealiasing.

    With a background vortex of circulation alpha the product is
    ``u' x w' + alpha U x w' + alpha u' x Theta e3``; the background self-interaction
    is a gradient and drops out. The (0, 0) mode of the result is zero.

    :param state: divergence-free flow state
    :return: divergence-free spectral field
    :raises: :class:`DivergenceViolation` if the velocity is not divergence free
    """
    u = state.u
    divergence = relative_divergence(u)
    if divergence > DIVERGENCE_TOLERANCE:
        raise DivergenceViolation(divergence)
    grid = state.grid
    velocity = inverse_transform(u)
    vorticity = inverse_transform(curl(u))
    if state.alpha_background != 0:
        alpha = state.alpha_background
        background = alpha * sampled_velocity(grid, state.t)
        theta = alpha * periodized_vorticity_samples(grid, state.t)
        velocity_part = velocity + background
        theta_vector = np.stack([np.zeros(grid.shape), np.zeros(grid.shape), theta])
        product = cross_product_physical(grid, velocity_part, vorticity)
        product = product + cross_product_physical(grid, velocity, theta_vector)
    else:
        product = cross_product_physical(grid, velocity, vorticity)
    rhs = leray_project(product)
    rhs.coeffs[:, 0, 0, 0] = 0.0
    return rhs


def zero_rhs(state: FlowState) -> SpectralVectorField:
    """Right-hand side of the linear (heat + Coriolis) flow."""
    return SpectralVectorField.zeros(state.grid)


def check_cfl(dt: float, speed: float, max_wavenumber: float) -> float:
    """
    Advective Courant number ``dt max|u| max|k|``.

    :raises: :class:`CflViolation` above the limit
    """
    courant = dt * speed * max_wavenumber
    if courant > CFL_NUMBER:
        raise CflViolation(courant, dt, speed, max_wavenumber)
    return courant


def step(
    state: FlowState,
    dt: float,
    integrator: str = IFRK2,
    rhs: Optional[RightHandSide] = None,
    speed: Optional[float] = None,
) -> FlowState:
    """
    Advance one step with an integrating-factor Runge-Kutta scheme.

    The heat and Coriolis terms are integrated exactly by :func:`rossby_propagate`;
    the nonlinear term explicitly.

    :param state: current state
    :param dt: positive step
    :param integrator: ``ifrk2`` (Heun) or ``ifrk4`` (classical RK4)
    :param rhs: explicit term, :func:`nonlinear_rhs` by default
    :param speed: largest speed for the CFL check, computed from ``state`` if omitted
    :return: state at ``t + dt``
    :raises: :class:`CflViolation` if the step is too large
    """
    rhs = nonlinear_rhs if rhs is None else rhs
    speed = max_speed(state) if speed is None else speed
    check_cfl(dt, speed, state.grid.max_wavenumber)
    if integrator == IFRK2:
        u = _ifrk2(state, dt, rhs)
    elif integrator == IFRK4:
        u = _ifrk4(state, dt, rhs)
    else:
        raise InvalidRunConfiguration(f'Unknown integrator "{integrator}".')
    return state.advance(u.with_flag(True), state.t + dt)


def _propagator(state: FlowState):
    def propagate(u: SpectralVectorField, h: float) -> SpectralVectorField:
        return rossby_propagate(u, h, state.omega)

    return propagate


def _ifrk2(state: FlowState, dt: float, rhs: RightHandSide) -> SpectralVectorField:
    propagate = _propagator(state)
    u = state.u
    k1 = rhs(state)
    predictor = propagate(u + k1 * dt, dt)
    k2 = rhs(state.advance(predictor, state.t + dt))
    return propagate(u + k1 * (0.5 * dt), dt) + k2 * (0.5 * dt)


def _ifrk4(state: FlowState, dt: float, rhs: RightHandSide) -> SpectralVectorField:
    propagate = _propagator(state)
    u = state.u
    half = 0.5 * dt
    u_half = propagate(u, half)
    u_full = propagate(u, dt)
    k1 = rhs(state)
    k2 = rhs(state.advance(propagate(u + k1 * half, half), state.t + half))
    k3 = rhs(state.advance(u_half + k2 * half, state.t + half))
    k4 = rhs(state.advance(u_full + propagate(k3, half) * dt, state.t + dt))
    increment = propagate(k1, dt) + propagate(k2 + k3, half) * 2.0 + k4
    return u_full + increment * (dt / 6.0)


def reduced_forcing(state: FlowState):
    """
    Forcing of the vertically averaged equations by the fluctuation.

    ``N1 = Q (u~.grad) u~_3`` and ``N2 = Q((u~.grad) w~_3 - (w~.grad) u~_3)``, both
    dealiased and supported on n=0.
    """
    grid = state.grid
    tilde = vertical_average(state.u).tilde
    tilde_samples = inverse_transform(tilde)
    vorticity_samples = inverse_transform(curl(tilde))
    n1 = _advect(grid, tilde_samples, tilde.component(2))
    n2 = _advect(grid, tilde_samples, curl(tilde).component(2)) - _advect(
        grid, vorticity_samples, tilde.component(2)
    )
    return n1.vertical_mean(), n2.vertical_mean()


def vertical_tendency_mismatch(state: FlowState) -> float:
    """
    Compare the n=0 vertical velocity tendency of :func:`nonlinear_rhs` with its
    decomposed form ``-(ubar_h.grad) u3bar - N1``; returns the relative difference.
    """
    grid = state.grid
    full = nonlinear_rhs(state).component(2).vertical_mean()
    decomposition = vertical_average(state.u)
    bar_samples = inverse_transform(decomposition.bar)
    if state.alpha_background != 0:
        bar_samples = bar_samples + state.alpha_background * sampled_velocity(
            grid, state.t
        )
    transport = _advect(grid, bar_samples, decomposition.bar.component(2))
    n1, _ = reduced_forcing(state)
    decomposed = -(transport.vertical_mean() + n1)
    scale = max(np.abs(full.coeffs).max(), np.abs(decomposed.coeffs).max())
    if scale == 0:
        return 0.0
    return float(np.abs(full.coeffs - decomposed.coeffs).max() / scale)


def _advect(grid, velocity_samples: np.ndarray, f: SpectralField) -> SpectralField:
    """Dealiased ``(v.grad) f`` for sampled ``v``."""
    gradient_samples = np.stack(
        [
            inverse_transform(SpectralField(grid, 1j * grid.d1 * f.coeffs)),
            inverse_transform(SpectralField(grid, 1j * grid.d2 * f.coeffs)),
            inverse_transform(SpectralField(grid, 1j * grid.d3 * f.coeffs)),
        ]
    )
    product = np.sum(velocity_samples * gradient_samples, axis=0)
    coeffs = forward_transform(grid, product).coeffs * grid.dealias_mask
    return SpectralField(grid, coeffs)


@dataclass
class Trajectory:
    """States sampled at the monitor cadence, their monitors and written checkpoints."""

    states: List[FlowState] = field(default_factory=list)
    monitors: EnergyMonitors = field(default_factory=EnergyMonitors)
    checkpoints: List[Path] = field(default_factory=list)
    lambdas: Optional[List[SpectralVectorField]] = None

    @property
    def final(self) -> FlowState:
        """Last sampled state."""
        return self.states[-1]

    @property
    def times(self) -> np.ndarray:
        """Sample times."""
        return np.array([state.t for state in self.states])


def grid_of(config: RunConfig) -> Grid:
    """Grid described by the configuration."""
    settings = config.grid
    return Grid(nx=settings.nx, ny=settings.ny, nz=settings.nz, box_l=settings.box_l)


def initial_state(config: RunConfig) -> FlowState:
    """Initial data of the configured run."""
    return make_initial_data(
        config.init,
        grid_of(config),
        omega=config.physics.omega,
        background_mode=config.background.mode,
    )


def step_count(config: RunConfig) -> int:
    """Number of steps reaching ``t_max``."""
    return max(1, int(round(config.time.t_max / config.time.dt)))


def integrate(  # pylint: disable=too-many-arguments
    state: FlowState,
    config: RunConfig,
    rhs: RightHandSide,
    artifacts: Optional[Artifacts] = None,
    observe: Optional[Callable[[FlowState], FlowState]] = None,
) -> Tuple[List[FlowState], List[Path]]:
    """
    Step ``state`` to ``t_max``, sampling and checkpointing the observed state.

    :param state: evolved state
    :param config: run configuration (time, output cadence)
    :param rhs: explicit term
    :param artifacts: checkpoint destination, none written if omitted
    :param observe: maps the evolved state to the physical one, identity by default
    :return: sampled physical states and checkpoint paths
    :raises: :class:`NonFiniteState` naming the last valid checkpoint on NaN or Inf
    """
    observe = (lambda evolved: evolved) if observe is None else observe
    output = config.output
    dt = config.time.dt
    samples = [observe(state)]
    checkpoints = []
    if artifacts is not None:
        checkpoints.append(_checkpoint(artifacts, 0, samples[0]))
    total = step_count(config)
    for index in range(1, total + 1):
        speed = max_speed(observe(state))
        state = step(state, dt, config.time.integrator, rhs=rhs, speed=speed)
        if not state.u.is_finite():
            last = str(checkpoints[-1]) if checkpoints else None
            raise NonFiniteState(state.t, last)
        if index % output.monitor_every == 0 or index == total:
            samples.append(observe(state))
            logger.debug("t=%.6f max|u|=%.6e", state.t, speed)
        if artifacts is not None and (
            index % output.checkpoint_every == 0 or index == total
        ):
            checkpoints.append(
                _checkpoint(artifacts, len(checkpoints), observe(state))
            )
    return samples, checkpoints


def _checkpoint(artifacts: Artifacts, index: int, state: FlowState) -> Path:
    return write_checkpoint(
        artifacts.checkpoint_path(index), state.u, state.t, state.omega
    )


def simulate(
    config: RunConfig,
    artifacts: Optional[Artifacts] = None,
    initial: Optional[FlowState] = None,
) -> Trajectory:
    """
    Run the configured flow to ``t_max``.

    :param config: validated run configuration
    :param artifacts: output directory for checkpoints and ``monitors.csv``
    :param initial: initial state, built from the configured recipe if omitted
    :return: :class:`Trajectory`
    """
    state = initial_state(config) if initial is None else initial
    rhs = nonlinear_rhs if config.physics.nonlinear else zero_rhs
    logger.info(
        "Simulating %d steps of dt=%g, Omega=%g",
        step_count(config),
        config.time.dt,
        state.omega,
    )
    states, checkpoints = integrate(state, config, rhs, artifacts)
    monitors = energy_monitors(states, settings=config.monitors)
    if artifacts is not None:
        artifacts.write_csv(MONITORS_FILE, MONITOR_COLUMNS, monitors.as_rows())
    logger.info("Largest X norm along the run: %.6e", monitors.max_x_norm)
    return Trajectory(states=states, monitors=monitors, checkpoints=checkpoints)
