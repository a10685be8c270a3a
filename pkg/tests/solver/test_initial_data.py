import numpy as np
import pytest

from nsclab.calculus import relative_divergence
from nsclab.checkpoint import write_checkpoint
from nsclab.configuration import InitialDataRecipe
from nsclab.constants import (
    DROP_MEAN,
    FILE,
    L1,
    L2,
    OSEEN,
    OSEEN_PLUS_2D_PERTURBATION,
    RANDOM_3D,
    VERTICAL_SHEAR,
    ZERO,
)
from nsclab.exceptions import (
    GridMismatch,
    InvalidRunConfiguration,
    MissingConfiguration,
)
from nsclab.grid import Grid
from nsclab.initial_data import blob_perturbation, make_initial_data
from nsclab.norms import norms
from nsclab.state import circulation
from tests.constants import ALPHA, OMEGA, SEED


def test_zero_recipe(small_grid):
    state = make_initial_data(InitialDataRecipe(recipe=ZERO), small_grid, OMEGA)

    assert state.t == 0.0
    assert state.omega == OMEGA
    assert np.all(state.u.coeffs == 0)


def test_analytic_oseen_carries_the_circulation(small_grid):
    state = make_initial_data(
        InitialDataRecipe(recipe=OSEEN, alpha=2.0), small_grid, OMEGA
    )

    assert state.alpha_background == 2.0
    assert np.all(state.u.coeffs == 0)
    assert circulation(state) == pytest.approx(2.0, rel=1e-9)


def test_dropped_mean_loses_the_circulation():
    grid = Grid(nx=32, ny=32, nz=4, box_l=20.0)

    state = make_initial_data(
        InitialDataRecipe(recipe=OSEEN, alpha=ALPHA), grid, background_mode=DROP_MEAN
    )

    assert state.alpha_background == 0.0
    assert circulation(state) == pytest.approx(0.0, abs=1e-12)
    assert norms(state.u, L2) > 0


def test_perturbation_keeps_the_circulation():
    grid = Grid(nx=32, ny=32, nz=4, box_l=20.0)
    recipe = InitialDataRecipe(
        recipe=OSEEN_PLUS_2D_PERTURBATION, alpha=ALPHA, perturbation_l1=0.5, seed=SEED
    )

    state = make_initial_data(recipe, grid)

    assert circulation(state) == pytest.approx(ALPHA, rel=1e-9)
    assert relative_divergence(state.u) < 1e-12
    assert np.all(state.u.coeffs[..., 1:] == 0)


def test_blob_perturbation_has_the_requested_size():
    grid = Grid(nx=32, ny=32, nz=4, box_l=20.0)

    blobs = blob_perturbation(grid, 0.5, SEED)

    assert norms(blobs, L1) == pytest.approx(0.5)
    assert blobs.mean == 0.0


def test_random_data_is_seeded_and_scaled(small_grid):
    recipe = InitialDataRecipe(recipe=RANDOM_3D, amplitude=0.3, seed=SEED, band=(1, 12))

    first = make_initial_data(recipe, small_grid)
    second = make_initial_data(recipe, small_grid)

    assert norms(first.u, L2) == pytest.approx(0.3)
    assert np.array_equal(first.u.coeffs, second.u.coeffs)
    assert np.all(first.u.coeffs[..., 0] == 0)
    assert relative_divergence(first.u) < 1e-12


def test_random_data_can_keep_the_mean(small_grid):
    recipe = InitialDataRecipe(recipe=RANDOM_3D, seed=SEED, zero_mean=False)

    state = make_initial_data(recipe, small_grid)

    assert np.abs(state.u.coeffs[..., 0]).max() > 0


def test_vertical_shear(small_grid):
    state = make_initial_data(
        InitialDataRecipe(recipe=VERTICAL_SHEAR, amplitude=2.0), small_grid
    )

    samples = state.u.physical()
    _, _, z = small_grid.coordinates()
    assert np.allclose(samples[0, 0, 0, :], 2.0 * np.cos(2.0 * np.pi * z))
    assert np.allclose(samples[1, 0, 0, :], 2.0 * np.sin(2.0 * np.pi * z))
    assert np.allclose(samples[2], 0.0)


def test_restart_from_checkpoint(random_velocity, tmp_path):
    path = write_checkpoint(tmp_path / "restart.nscf", random_velocity, 0.5, OMEGA)
    recipe = InitialDataRecipe(recipe=FILE, path=str(path), alpha=ALPHA)

    state = make_initial_data(recipe, random_velocity.grid, OMEGA)

    assert state.t == 0.5
    assert state.alpha_background == ALPHA
    assert np.array_equal(state.u.coeffs, random_velocity.coeffs)


def test_restart_on_another_grid(random_velocity, tmp_path):
    path = write_checkpoint(tmp_path / "restart.nscf", random_velocity, 0.5, OMEGA)
    recipe = InitialDataRecipe(recipe=FILE, path=str(path))

    with pytest.raises(GridMismatch):
        make_initial_data(recipe, random_velocity.grid.with_box(3.0))


def test_restart_without_file(small_grid, tmp_path):
    recipe = InitialDataRecipe(recipe=FILE, path=str(tmp_path / "missing.nscf"))

    with pytest.raises(MissingConfiguration):
        make_initial_data(recipe, small_grid)


def test_unknown_recipe(small_grid):
    with pytest.raises(InvalidRunConfiguration):
        make_initial_data(InitialDataRecipe(recipe="spiral"), small_grid)
