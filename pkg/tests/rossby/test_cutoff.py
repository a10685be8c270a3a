import numpy as np
import pytest
from pytest_cases import THIS_MODULE, parametrize_with_cases

from nsclab.exceptions import InvalidCutoff
from nsclab.rossby import CutoffBall, chi, fourier_cutoff, smoothstep


def case_inside_plateau():
    return 0.3, 1.0


def case_plateau_edge():
    return 0.5, 1.0


def case_midpoint():
    return 0.75, 0.5


def case_outer_edge():
    return 1.0, 0.0


def case_outside():
    return 1.7, 0.0


def case_negative_argument():
    return -0.75, 0.5


@parametrize_with_cases(argnames="x, expected", cases=THIS_MODULE)
def test_chi_values(x, expected):
    assert chi(x) == pytest.approx(expected)


def test_smoothstep_is_monotone():
    values = smoothstep(np.linspace(0.0, 1.0, 101))

    assert np.all(np.diff(values) >= 0)


@pytest.mark.parametrize("radius", [0.0, -2.0])
def test_cutoff_radius_must_be_positive(radius):
    with pytest.raises(InvalidCutoff):
        CutoffBall(radius)


def test_cutoff_splits_the_field(random_velocity):
    ball = CutoffBall(8.0)

    low, high = fourier_cutoff(random_velocity, ball)

    assert np.abs(low.coeffs + high.coeffs - random_velocity.coeffs).max() < 1e-15
    xi = np.sqrt(random_velocity.grid.xi_sq)
    inside = np.broadcast_to(xi <= 4.0, random_velocity.grid.shape)
    outside = np.broadcast_to(xi >= 8.0, random_velocity.grid.shape)
    assert np.all(high.coeffs[:, inside] == 0)
    assert np.all(low.coeffs[:, outside] == 0)
