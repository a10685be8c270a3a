import numpy as np
import pytest

from nsclab.calculus import dealias, leray_project
from nsclab.configuration import Configuration
from nsclab.fields import forward_transform_vector
from nsclab.grid import Grid
from tests.constants import SMALL_BOX, SMALL_GRID_SHAPE


@pytest.fixture
def clear_configuration():
    yield
    Configuration.reset_configuration()


@pytest.fixture
def small_grid():
    nx, ny, nz = SMALL_GRID_SHAPE
    return Grid(nx=nx, ny=ny, nz=nz, box_l=SMALL_BOX)


@pytest.fixture
def random_velocity(small_grid):
    rng = np.random.default_rng(1234)
    samples = rng.standard_normal((3,) + small_grid.shape)
    return dealias(leray_project(forward_transform_vector(small_grid, samples)))


@pytest.fixture
def output_dir(tmpdir_factory):
    return tmpdir_factory.mktemp("output")


@pytest.fixture
def print_mock(mocker):
    return mocker.patch("builtins.print")
