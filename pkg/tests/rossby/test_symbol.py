import numpy as np
import pytest
from pytest_cases import THIS_MODULE, parametrize_with_cases

from nsclab.exceptions import UndefinedSymbol
from nsclab.rossby import coriolis_symbol, eigen_data
from tests.constants import OMEGA


def case_oblique_mode():
    return (1.0, 2.0), 1


def case_vertical_mode():
    return (0.0, 0.0), 2


def case_horizontal_mode():
    return (3.0, -1.0), 0


def case_negative_vertical_mode():
    return (-0.5, 4.0), -3


@parametrize_with_cases(argnames="k, n", cases=THIS_MODULE)
def test_eigenvectors_of_the_symbol(k, n):
    data = eigen_data(k, n)
    matrix = coriolis_symbol(k, n, OMEGA)

    plus = data.xi_sq + 1j * OMEGA * data.eta
    minus = data.xi_sq - 1j * OMEGA * data.eta
    assert np.abs(matrix @ data.wplus - plus * data.wplus).max() < 1e-9
    assert np.abs(matrix @ data.wminus - minus * data.wminus).max() < 1e-9


@parametrize_with_cases(argnames="k, n", cases=THIS_MODULE)
def test_eigenvectors_are_orthonormal_and_divergence_free(k, n):
    data = eigen_data(k, n)
    xi = np.array([k[0], k[1], 2.0 * np.pi * n])

    assert np.vdot(data.wplus, data.wplus).real == pytest.approx(1.0)
    assert np.vdot(data.wminus, data.wminus).real == pytest.approx(1.0)
    assert abs(np.vdot(data.wplus, data.wminus)) < 1e-12
    assert abs(xi @ data.wplus) < 1e-12
    assert abs(xi @ data.wminus) < 1e-12


def test_horizontal_mode_has_no_dispersion():
    data = eigen_data((3.0, -1.0), 0)

    assert data.eta == 0.0
    assert np.allclose(
        coriolis_symbol((3.0, -1.0), 0, OMEGA), data.xi_sq * np.eye(3)
    )


def test_symbol_is_undefined_at_the_origin():
    with pytest.raises(UndefinedSymbol):
        coriolis_symbol((0.0, 0.0), 0, OMEGA)
    with pytest.raises(UndefinedSymbol):
        eigen_data((0.0, 0.0), 0)
