import math

import numpy as np
import pytest

from nsclab.fields import SpectralVectorField
from nsclab.grid import Grid
from nsclab.initial_data import vertical_shear
from nsclab.oseen import oseen_velocity
from nsclab.state import (
    FlowState,
    background_velocity,
    background_vorticity,
    circulation,
    divergence_error,
    max_speed,
    velocity_samples,
    vertical_vorticity,
)
from tests.constants import ALPHA, OMEGA


@pytest.fixture
def vortex_grid():
    return Grid(nx=32, ny=32, nz=4, box_l=20.0)


def test_state_without_background(small_grid):
    state = FlowState(u=vertical_shear(small_grid, 3.0), t=0.0, omega=OMEGA)

    assert background_velocity(state) is None
    assert background_vorticity(state) is None
    assert max_speed(state) == pytest.approx(3.0)
    assert circulation(state) == 0.0
    assert divergence_error(state) == 0.0


def test_background_is_added_to_the_samples(vortex_grid):
    state = FlowState(
        u=SpectralVectorField.zeros(vortex_grid),
        t=1.0,
        omega=0.0,
        alpha_background=ALPHA,
    )

    samples = velocity_samples(state)

    x, y = vortex_grid.centered_mesh()
    point = np.array([x[3, 0, 0], y[0, 7, 0]])
    assert samples[:, 3, 7, 0] == pytest.approx(ALPHA * oseen_velocity(point, 1.0))
    assert np.all(samples[2] == 0)


def test_vertical_vorticity_includes_the_background(vortex_grid):
    state = FlowState(
        u=SpectralVectorField.zeros(vortex_grid),
        t=0.0,
        omega=0.0,
        alpha_background=ALPHA,
    )

    w3 = vertical_vorticity(state)

    assert w3.integral == pytest.approx(ALPHA, rel=1e-6)
    assert circulation(state) == pytest.approx(ALPHA, rel=1e-6)


def test_advance_keeps_the_flow_parameters(small_grid):
    state = FlowState(
        u=SpectralVectorField.zeros(small_grid),
        t=0.0,
        omega=OMEGA,
        alpha_background=2.0,
    )

    later = state.advance(vertical_shear(small_grid, 1.0), 0.5)

    assert later.t == 0.5
    assert later.omega == OMEGA
    assert later.alpha_background == 2.0
    assert state.t == 0.0


def test_circulation_is_the_quadrature_of_the_total_vorticity(vortex_grid):
    shear = vertical_shear(vortex_grid, 1.0)
    state = FlowState(u=shear, t=0.5, omega=0.0, alpha_background=ALPHA)

    samples = np.asarray(vertical_vorticity(state).physical())

    assert circulation(state) == pytest.approx(
        float(np.sum(samples) * vortex_grid.cell_volume), rel=1e-12
    )


def test_circulation_shows_the_mass_the_images_lose(small_grid):
    t = 20.0
    state = FlowState(
        u=SpectralVectorField.zeros(small_grid),
        t=t,
        omega=0.0,
        alpha_background=ALPHA,
    )

    # the nearest images cover a square of side 6 pi around the center
    held = math.erf(3.0 * math.pi / (2.0 * math.sqrt(1.0 + t))) ** 2

    assert circulation(state) < 0.9 * ALPHA
    assert circulation(state) == pytest.approx(ALPHA * held, rel=0.05)
