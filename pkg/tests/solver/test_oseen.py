import math

import numpy as np
import pytest
from scipy import integrate

from nsclab.oseen import (
    gaussian_profile,
    oseen_velocity,
    oseen_vorticity,
    periodized_vorticity,
    velocity_profile,
)


def test_gaussian_has_unit_mass():
    mass, _ = integrate.quad(
        lambda r: 2.0 * math.pi * r * float(gaussian_profile(np.array([r, 0.0]))),
        0.0,
        np.inf,
    )

    assert mass == pytest.approx(1.0, rel=1e-10)


def test_vorticity_at_the_center():
    center = np.zeros(2)

    assert oseen_vorticity(center, 0.0) == pytest.approx([0.0, 0.0, 1 / (4 * math.pi)])
    assert oseen_vorticity(center, 3.0)[2] == pytest.approx(1 / (16 * math.pi))


def test_velocity_vanishes_at_the_center():
    assert oseen_velocity(np.zeros(2), 1.0) == pytest.approx(np.zeros(3))


def test_velocity_profile_is_continuous_at_the_origin():
    tiny = velocity_profile(np.array([1e-5, 0.0]))
    small = velocity_profile(np.array([1e-3, 0.0]))

    assert tiny[1] / 1e-5 == pytest.approx(1 / (8 * math.pi), rel=1e-6)
    assert small[1] / 1e-3 == pytest.approx(1 / (8 * math.pi), rel=1e-6)


def test_far_field_is_the_point_vortex():
    xi = np.array([0.0, 30.0])

    assert oseen_velocity(xi, 0.0) == pytest.approx(
        [-1 / (2 * math.pi * 30.0), 0.0, 0.0], rel=1e-12
    )


def test_velocity_is_self_similar():
    xi = np.array([[1.0, 2.0], [-0.5, 0.25]])
    t = 3.0

    assert oseen_velocity(xi, t) == pytest.approx(oseen_velocity(xi / 2.0, 0.0) / 2.0)


def test_vorticity_is_the_curl_of_the_velocity():
    step = 1e-4
    point = np.array([0.7, -0.3])
    dx, dy = np.array([step, 0.0]), np.array([0.0, step])
    t = 0.5

    dv_dx = (oseen_velocity(point + dx, t)[1] - oseen_velocity(point - dx, t)[1]) / (
        2 * step
    )
    du_dy = (oseen_velocity(point + dy, t)[0] - oseen_velocity(point - dy, t)[0]) / (
        2 * step
    )

    assert dv_dx - du_dy == pytest.approx(oseen_vorticity(point, t)[2], rel=1e-6)


def test_periodized_vorticity_carries_the_circulation(small_grid):
    field = periodized_vorticity(small_grid, 0.0, alpha=2.0)

    assert field.integral == pytest.approx(2.0, rel=1e-6)
