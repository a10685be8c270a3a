import numpy as np
import pytest
import scipy.linalg

from nsclab.calculus import coriolis_term, vertical_average
from nsclab.constants import HS, L2
from nsclab.exceptions import NegativeTime
from nsclab.fields import SpectralVectorField
from nsclab.norms import norms
from nsclab.rossby import coriolis_symbol, rossby_propagate
from tests.constants import EXACT, FOUR_PI_SQUARED, OMEGA
from tests.util import relative_difference


def restricted(u, mask):
    return SpectralVectorField(u.grid, u.coeffs * mask, u.divergence_free)


def test_mode_matches_matrix_exponential(random_velocity):
    t = 0.01

    evolved = rossby_propagate(random_velocity, t, OMEGA)

    # the flow is generated by the symbol taken at -Omega
    expected = scipy.linalg.expm(-t * coriolis_symbol((1.0, 2.0), 1, -OMEGA)) @ (
        random_velocity.coeffs[:, 1, 2, 1]
    )
    assert relative_difference(evolved.coeffs[:, 1, 2, 1], expected) < 1e-10


def test_generator_is_heat_minus_coriolis(random_velocity):
    t = 1e-7
    grid = random_velocity.grid

    evolved = rossby_propagate(random_velocity, t, OMEGA)

    derivative = (evolved.coeffs - random_velocity.coeffs) / t
    expected = (
        -grid.d_sq * random_velocity.coeffs
        - OMEGA * coriolis_term(random_velocity).coeffs
    )
    assert relative_difference(derivative[..., 1:], expected[..., 1:]) < 1e-4


def test_generator_differs_from_the_opposite_rotation(random_velocity):
    t = 1e-7
    grid = random_velocity.grid

    evolved = rossby_propagate(random_velocity, t, OMEGA)

    derivative = (evolved.coeffs - random_velocity.coeffs) / t
    opposite = (
        -grid.d_sq * random_velocity.coeffs
        + OMEGA * coriolis_term(random_velocity).coeffs
    )
    assert relative_difference(derivative[..., 1:], opposite[..., 1:]) > 0.1


def test_semigroup(random_velocity):
    once = rossby_propagate(random_velocity, 0.03, OMEGA)
    halfway = rossby_propagate(random_velocity, 0.01, OMEGA)
    twice = rossby_propagate(halfway, 0.02, OMEGA)

    assert relative_difference(twice.coeffs, once.coeffs) < 1e-10


def test_zero_time_is_identity(random_velocity):
    evolved = rossby_propagate(random_velocity, 0.0, OMEGA)

    assert np.array_equal(evolved.coeffs, random_velocity.coeffs)
    assert evolved.coeffs is not random_velocity.coeffs


def test_without_rotation_only_heat_acts(random_velocity):
    evolved = rossby_propagate(random_velocity, 0.02, 0.0)

    expected = random_velocity.coeffs * np.exp(-0.02 * random_velocity.grid.xi_sq)
    assert np.abs(evolved.coeffs - expected).max() < EXACT


def test_vertical_mean_only_feels_heat(random_velocity):
    rotating = rossby_propagate(random_velocity, 0.02, OMEGA)
    resting = rossby_propagate(random_velocity, 0.02, 0.0)

    assert np.abs(rotating.coeffs[..., 0] - resting.coeffs[..., 0]).max() < EXACT


@pytest.mark.parametrize("t", [0.005, 0.02, 0.1])
def test_rotation_does_not_change_energy(random_velocity, t):
    rotating = norms(rossby_propagate(random_velocity, t, OMEGA), L2)
    resting = norms(rossby_propagate(random_velocity, t, 0.0), L2)

    assert rotating == pytest.approx(resting, rel=1e-12)


@pytest.mark.parametrize("radius", [3.0, 8.0])
def test_high_frequencies_decay_at_the_ball_rate(random_velocity, radius):
    grid = random_velocity.grid
    high = restricted(random_velocity, grid.xi_sq >= radius ** 2)
    t = 0.01

    evolved = rossby_propagate(high, t, OMEGA)

    bound = np.exp(-(radius ** 2) * t) * norms(high, L2)
    assert norms(high, L2) > 0
    assert norms(evolved, L2) <= bound * (1.0 + EXACT)


@pytest.mark.parametrize("s", [0.0, 1.0])
@pytest.mark.parametrize("t", [0.01, 0.05])
def test_fluctuation_decays_in_sobolev_norms(random_velocity, s, t):
    tilde = vertical_average(random_velocity).tilde

    evolved = rossby_propagate(tilde, t, OMEGA)

    bound = np.exp(-FOUR_PI_SQUARED * t) * norms(tilde, HS, s)
    assert norms(evolved, HS, s) <= bound * (1.0 + EXACT)


def test_lowest_vertical_modes_reach_the_decay_bound(random_velocity):
    grid = random_velocity.grid
    lowest = (grid.m1 == 0) & (grid.m2 == 0) & (np.abs(grid.n) == 1)
    u0 = restricted(random_velocity, lowest)
    t = 0.02

    evolved = rossby_propagate(u0, t, OMEGA)

    assert norms(evolved, L2) == pytest.approx(
        np.exp(-FOUR_PI_SQUARED * t) * norms(u0, L2), rel=1e-12
    )


def test_energy_decreases(random_velocity):
    sizes = [
        norms(rossby_propagate(random_velocity, t, OMEGA), L2)
        for t in (0.0, 0.01, 0.02, 0.04)
    ]

    assert all(later < earlier for earlier, later in zip(sizes, sizes[1:]))


def test_negative_time(random_velocity):
    with pytest.raises(NegativeTime):
        rossby_propagate(random_velocity, -0.1, OMEGA)
