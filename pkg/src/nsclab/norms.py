"""Lebesgue, Sobolev and X norms of spectral fields."""
from typing import Optional, Union

import numpy as np

from nsclab.calculus import curl, vertical_average
from nsclab.constants import HS, L1, L2, L3, L4, LINF, NORMS
from nsclab.exceptions import InvalidNorm
from nsclab.fields import SpectralField, SpectralVectorField, inverse_transform

Field = Union[SpectralField, SpectralVectorField]


def norms(f: Field, which: str, s: Optional[float] = None) -> float:
    """
    Norm of a scalar or vector field on the layer.

    L1, L3, L4 and Linf are quadratures of the pointwise (Euclidean) magnitude at the
    grid points; L2 and Hs are computed from the coefficients.

    :param f: scalar or vector field
    :param which: one of ``L1``, ``L2``, ``L3``, ``L4``, ``Linf``, ``Hs``
    :param s: Sobolev index, required for ``Hs``
    :return: nonnegative real
    :raises: :class:`InvalidNorm` for unknown norms or negative ``s``
    """
    if which not in NORMS:
        raise InvalidNorm(f'Unknown norm "{which}", choose from {", ".join(NORMS)}.')
    if which == HS:
        if s is None or s < 0:
            raise InvalidNorm(f"Sobolev index must be nonnegative, got {s}.")
        return sobolev_norm(f, s)
    if which == L2:
        return sobolev_norm(f, 0.0)
    return lebesgue_norm(magnitude(f), f.grid.cell_volume, which)


def magnitude(f: Field) -> np.ndarray:
    """Pointwise absolute value (Euclidean for vectors) at the grid points."""
    samples = inverse_transform(f)
    if isinstance(f, SpectralVectorField):
        return np.sqrt(np.sum(samples ** 2, axis=0))
    return np.abs(samples)


def lebesgue_norm(values: np.ndarray, cell_volume: float, which: str) -> float:
    """Quadrature of a nonnegative sample array in L1, L2, L3, L4 or Linf."""
    if which == LINF:
        return float(values.max(initial=0.0))
    power = {L1: 1, L2: 2, L3: 3, L4: 4}[which]
    return float((np.sum(values ** power) * cell_volume) ** (1.0 / power))


def sobolev_norm(f: Field, s: float) -> float:
    """``(L^2 sum (1+|xi|^2)^s |f|^2)^(1/2)``."""
    weight = (1.0 + f.grid.xi_sq) ** s
    power = np.abs(f.coeffs) ** 2
    if isinstance(f, SpectralVectorField):
        power = np.sum(power, axis=0)
    return float(np.sqrt(f.grid.area * np.sum(weight * power)))


def gradient_l2(f: Field) -> float:
    """``||grad f||_{L^2}``."""
    return _weighted_l2(f, f.grid.xi_sq)


def laplacian_l2(f: Field) -> float:
    """``||lap f||_{L^2}``."""
    return _weighted_l2(f, f.grid.xi_sq ** 2)


def _weighted_l2(f: Field, weight: np.ndarray) -> float:
    power = np.abs(f.coeffs) ** 2
    if isinstance(f, SpectralVectorField):
        power = np.sum(power, axis=0)
    return float(np.sqrt(f.grid.area * np.sum(weight * power)))


def x_norm(
    u: SpectralVectorField, background_vorticity: Optional[SpectralField] = None
) -> float:
    """
    ``||u~||_{H1} + ||u3bar||_{H1} + ||w3bar||_{L1} + ||w3bar||_{L2}``.

    :param u: divergence-free velocity
    :param background_vorticity: vertical vorticity carried outside ``u``,
     added to w3bar
    :return: nonnegative real
    """
    decomposition = vertical_average(u)
    u3bar = decomposition.bar.component(2)
    w3bar = curl(decomposition.bar).component(2)
    if background_vorticity is not None:
        w3bar = w3bar + background_vorticity.vertical_mean()
    return (
        sobolev_norm(decomposition.tilde, 1.0)
        + sobolev_norm(u3bar, 1.0)
        + norms(w3bar, L1)
        + norms(w3bar, L2)
    )
