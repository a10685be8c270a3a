import numpy as np
import pytest

from nsclab.calculus import vertical_average
from nsclab.constants import RANDOM_3D
from nsclab.rossby import rossby_propagate
from nsclab.solver import simulate
from nsclab.splitting import lambda_r_split_run, remainders
from tests.constants import OMEGA, SMALL_BOX
from tests.util import relative_difference, run_config


@pytest.fixture
def split_config(tmp_path):
    return run_config(
        tmp_path,
        grid=dict(nx=16, ny=16, nz=8, box_l=SMALL_BOX),
        physics=dict(omega=OMEGA),
        time=dict(t_max=0.02, dt=0.005),
        init=dict(recipe=RANDOM_3D, amplitude=0.2, band=[1.0, 12.0], zero_mean=False),
        output=dict(monitor_every=1, checkpoint_every=4),
        split=dict(enabled=True, radius=8.0),
    )


def test_split_run_follows_the_unsplit_dynamics(split_config):
    plain = simulate(split_config)
    split = lambda_r_split_run(split_config, split_config.split.radius)

    assert len(split.states) == len(plain.states)
    for ours, reference in zip(split.states, plain.states):
        assert ours.t == pytest.approx(reference.t)
        assert relative_difference(ours.u.coeffs, reference.u.coeffs) < 1e-8


def test_rossby_part_is_evolved_exactly(split_config):
    split = lambda_r_split_run(split_config, split_config.split.radius)

    lambda0 = split.lambdas[0]
    for state, lam in zip(split.states, split.lambdas):
        expected = rossby_propagate(lambda0, state.t, OMEGA)
        assert np.abs(lam.coeffs - expected.coeffs).max() < 1e-15
    assert np.all(lambda0.coeffs[..., 0] == 0)


def test_remainder_starts_outside_the_ball(split_config):
    split = lambda_r_split_run(split_config, split_config.split.radius)

    first = remainders(split)[0]
    tilde = vertical_average(split.states[0].u).tilde
    xi = np.sqrt(first.grid.xi_sq)
    inside = np.broadcast_to(xi <= 4.0, first.grid.shape)
    assert np.all(first.coeffs[:, inside] == 0)
    assert np.abs(first.coeffs + split.lambdas[0].coeffs - tilde.coeffs).max() < 1e-15


def test_zero_radius_leaves_no_rossby_part(split_config):
    split = lambda_r_split_run(split_config, 0.0)

    assert all(np.all(lam.coeffs == 0) for lam in split.lambdas)
    assert len(split.monitors.records) == len(split.states)
