"""Flow state: spectral velocity plus an analytically carried Oseen background."""
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from nsclab.calculus import curl, relative_divergence
from nsclab.fields import SpectralField, SpectralVectorField, inverse_transform
from nsclab.grid import Grid
from nsclab.oseen import (
    periodized_vorticity,
    periodized_vorticity_samples,
    sampled_velocity,
)


@dataclass(frozen=True, eq=False)
class FlowState:
    """
    Velocity at time ``t`` for rotation rate ``omega``.

    When ``alpha_background`` is nonzero the physical velocity is
    ``alpha_background * u^G(t) + u`` with ``u^G`` the unit Oseen vortex centered in the
    box, and ``u`` carries a mean-free vertical vorticity.
    """

    u: SpectralVectorField
    t: float
    omega: float
    alpha_background: float = 0.0

    @property
    def grid(self) -> Grid:
        """Grid of the velocity."""
        return self.u.grid

    def advance(self, u: SpectralVectorField, t: float) -> "FlowState":
        """Same flow parameters, new velocity and time."""
        return replace(self, u=u, t=t)


def background_velocity(state: FlowState) -> Optional[np.ndarray]:
    """Samples of ``alpha u^G(t)`` shaped ``(3, nx, ny, nz)``, or ``None``."""
    if state.alpha_background == 0:
        return None
    return state.alpha_background * sampled_velocity(state.grid, state.t)


def background_vorticity(state: FlowState) -> Optional[SpectralField]:
    """Periodized ``alpha Theta(t)``, ``None`` without background."""
    if state.alpha_background == 0:
        return None
    return periodized_vorticity(state.grid, state.t, state.alpha_background)


def velocity_samples(state: FlowState) -> np.ndarray:
    """Full physical velocity at the grid points, background included."""
    samples = inverse_transform(state.u)
    background = background_velocity(state)
    if background is not None:
        samples = samples + background
    return samples


def max_speed(state: FlowState) -> float:
    """Largest pointwise speed of the full velocity."""
    return float(np.sqrt(np.sum(velocity_samples(state) ** 2, axis=0)).max())


def vertical_vorticity(state: FlowState) -> SpectralField:
    """``w3bar``: the n=0 part of the vertical vorticity, background included."""
    w3 = curl(state.u).component(2).vertical_mean()
    background = background_vorticity(state)
    if background is not None:
        w3 = w3 + background.vertical_mean()
    return w3


def circulation(state: FlowState) -> float:
    """
    Quadrature of the total vertical vorticity over the layer.

    The periodized background enters through its samples, so mass of the vortex that
    the nearest images no longer hold shows up as a loss. A drop-mean run carries no
    circulation here.
    """
    samples = inverse_transform(curl(state.u).component(2))
    if state.alpha_background != 0:
        samples = samples + state.alpha_background * periodized_vorticity_samples(
            state.grid, state.t
        )
    return float(np.sum(samples) * state.grid.cell_volume)


def divergence_error(state: FlowState) -> float:
    """Relative divergence of the spectral velocity."""
    return relative_divergence(state.u)
