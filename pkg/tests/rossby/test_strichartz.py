import math

import numpy as np
import pytest

from nsclab.calculus import dealias, leray_project
from nsclab.exceptions import EmptySweep
from nsclab.fields import SpectralVectorField
from nsclab.initial_data import vertical_shear
from nsclab.strichartz import (
    japanese_bracket,
    strichartz_experiment,
    sup_norm_integral,
    tail_bound,
)
from tests.constants import FOUR_PI_SQUARED, OMEGA

AMPLITUDE = 0.5
HORIZON = 0.1


@pytest.fixture
def shear(small_grid):
    return vertical_shear(small_grid, AMPLITUDE)


def test_japanese_bracket():
    assert japanese_bracket(0.0) == 1.0
    assert japanese_bracket(3.0) == pytest.approx(math.sqrt(10.0))


def test_shear_integral_is_a_heat_integral(shear):
    decay = 1.0 - math.exp(-FOUR_PI_SQUARED * HORIZON)
    expected = AMPLITUDE * decay / FOUR_PI_SQUARED

    integral = sup_norm_integral(shear, OMEGA, HORIZON, 1e-3)

    assert integral == pytest.approx(expected, rel=1e-3)


def test_shear_does_not_feel_the_rotation(shear):
    table = strichartz_experiment(shear, [OMEGA, 0.0], HORIZON, 1e-2)

    assert [row.omega for row in table.rows] == [0.0, OMEGA]
    assert table.rows[0].integral == pytest.approx(table.rows[1].integral, rel=1e-12)
    assert table.slope == pytest.approx(0.0, abs=1e-9)
    assert not table.flagged


def test_single_rotation_rate_is_flagged(shear):
    table = strichartz_experiment(shear, [OMEGA], HORIZON, 1e-2)

    assert table.flagged
    assert math.isnan(table.rows[0].slope_fit_local)
    assert table.rows[0].scaled_integral == pytest.approx(
        table.rows[0].integral * japanese_bracket(OMEGA) ** 0.25
    )


def test_tail_bound_of_the_shear(shear):
    # |u_mode| = amplitude / sqrt(2) on n = +1 and n = -1
    expected = 2.0 * (AMPLITUDE / math.sqrt(2.0)) / FOUR_PI_SQUARED

    assert tail_bound(shear) == pytest.approx(expected)


def test_empty_sweep(shear):
    with pytest.raises(EmptySweep):
        strichartz_experiment(shear, [], HORIZON, 1e-2)


@pytest.fixture
def focused(small_grid):
    # every mode in phase at the origin, no vertical mean
    envelope = np.exp(-small_grid.xi_sq / 100.0) * (small_grid.n != 0)
    coeffs = np.ones((3,) + small_grid.shape, dtype=complex) * envelope
    return dealias(leray_project(SpectralVectorField(small_grid, coeffs)))


def test_rotation_spreads_focused_data(focused):
    table = strichartz_experiment(focused, [0.0, 10.0, 100.0, 1000.0], 0.05, 5e-4)

    assert [row.omega for row in table.rows] == [0.0, 10.0, 100.0, 1000.0]
    assert table.decreasing
    assert table.slope < 0
