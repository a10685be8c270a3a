"""Spectral fields on the layer grid and the transforms to and from samples."""
from dataclasses import dataclass
from typing import Union

import numpy as np
import scipy.fft

from nsclab.constants import REALITY_TOLERANCE
from nsclab.exceptions import GridMismatch, RealityViolation
from nsclab.grid import Grid

_SPATIAL_AXES = (-3, -2, -1)


@dataclass(frozen=True, eq=False)
class SpectralField:
    """
    Trigonometric interpolation coefficients of a real scalar field.

    ``coeffs[m1, m2, n]`` multiplies ``exp(i(k.x + 2 pi n z))``; a constant field ``c``
    has ``c`` as its only nonzero coefficient.
    """

    grid: Grid
    coeffs: np.ndarray

    # Arrays on the left defer to __rmul__.
    __array_ufunc__ = None

    def __post_init__(self) -> None:
        if self.coeffs.shape != self.grid.shape:
            raise GridMismatch(self.grid.shape, self.coeffs.shape)

    @classmethod
    def zeros(cls, grid: Grid) -> "SpectralField":
        """Zero field on grid."""
        return cls(grid=grid, coeffs=np.zeros(grid.shape, dtype=complex))

    @property
    def mean(self) -> float:
        """Average of the field over the layer."""
        return float(self.coeffs[0, 0, 0].real)

    @property
    def integral(self) -> float:
        """Integral of the field over the layer."""
        return self.grid.area * self.mean

    def vertical_mean(self) -> "SpectralField":
        """The n=0 part of the field."""
        coeffs = np.zeros_like(self.coeffs)
        coeffs[:, :, 0] = self.coeffs[:, :, 0]
        return SpectralField(self.grid, coeffs)

    def physical(self) -> np.ndarray:
        """Samples of the field at the grid points."""
        return inverse_transform(self)

    def __add__(self, other: "SpectralField") -> "SpectralField":
        return SpectralField(self.grid, self.coeffs + other.coeffs)

    def __sub__(self, other: "SpectralField") -> "SpectralField":
        return SpectralField(self.grid, self.coeffs - other.coeffs)

    def __neg__(self) -> "SpectralField":
        return SpectralField(self.grid, -self.coeffs)

    def __mul__(self, factor: Union[float, np.ndarray]) -> "SpectralField":
        return SpectralField(self.grid, self.coeffs * factor)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class SpectralVectorField:
    """Three spectral components on a shared grid, stacked as ``coeffs[component]``."""

    grid: Grid
    coeffs: np.ndarray
    divergence_free: bool = False

    __array_ufunc__ = None

    def __post_init__(self) -> None:
        if self.coeffs.shape != (3,) + self.grid.shape:
            raise GridMismatch((3,) + self.grid.shape, self.coeffs.shape)

    @classmethod
    def zeros(cls, grid: Grid) -> "SpectralVectorField":
        """Zero velocity on grid."""
        return cls(
            grid=grid,
            coeffs=np.zeros((3,) + grid.shape, dtype=complex),
            divergence_free=True,
        )

    def component(self, index: int) -> SpectralField:
        """Scalar field of one component."""
        return SpectralField(self.grid, self.coeffs[index])

    def vertical_mean(self) -> "SpectralVectorField":
        """The n=0 part of every component."""
        coeffs = np.zeros_like(self.coeffs)
        coeffs[..., 0] = self.coeffs[..., 0]
        return SpectralVectorField(self.grid, coeffs, self.divergence_free)

    def physical(self) -> np.ndarray:
        """Samples of the three components, shaped ``(3, nx, ny, nz)``."""
        return inverse_transform(self)

    def is_finite(self) -> bool:
        """All coefficients are finite numbers."""
        return bool(np.all(np.isfinite(self.coeffs)))

    def with_flag(self, divergence_free: bool) -> "SpectralVectorField":
        """Same coefficients, different divergence-free flag."""
        return SpectralVectorField(self.grid, self.coeffs, divergence_free)

    def __add__(self, other: "SpectralVectorField") -> "SpectralVectorField":
        return SpectralVectorField(
            self.grid,
            self.coeffs + other.coeffs,
            self.divergence_free and other.divergence_free,
        )

    def __sub__(self, other: "SpectralVectorField") -> "SpectralVectorField":
        return SpectralVectorField(
            self.grid,
            self.coeffs - other.coeffs,
            self.divergence_free and other.divergence_free,
        )

    def __neg__(self) -> "SpectralVectorField":
        return SpectralVectorField(self.grid, -self.coeffs, self.divergence_free)

    def __mul__(self, factor: Union[float, np.ndarray]) -> "SpectralVectorField":
        # Mode-wise scalar multipliers keep the flag.
        return SpectralVectorField(
            self.grid, self.coeffs * factor, self.divergence_free
        )

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class FieldDecomposition:
    """Split of a velocity into its vertical average and the fluctuation around it."""

    bar: SpectralVectorField
    tilde: SpectralVectorField

    def recompose(self) -> SpectralVectorField:
        """bar + tilde."""
        return self.bar + self.tilde


def forward_transform(grid: Grid, values: np.ndarray) -> SpectralField:
    """
    Interpolation coefficients of real samples taken at the grid points.

    :param grid: grid the samples live on
    :param values: real array shaped like the grid
    :return: :class:`SpectralField`
    :raises: :class:`GridMismatch` if the array does not match the grid
    """
    values = np.asarray(values)
    if values.shape != grid.shape:
        raise GridMismatch(grid.shape, values.shape)
    return SpectralField(grid, _fft(values, grid))


def forward_transform_vector(
    grid: Grid, values: np.ndarray, divergence_free: bool = False
) -> SpectralVectorField:
    """Interpolation coefficients of vector samples shaped ``(3, nx, ny, nz)``."""
    values = np.asarray(values)
    if values.shape != (3,) + grid.shape:
        raise GridMismatch((3,) + grid.shape, values.shape)
    return SpectralVectorField(grid, _fft(values, grid), divergence_free)


def inverse_transform(
    field: Union[SpectralField, SpectralVectorField]
) -> np.ndarray:
    """
    Real samples at the grid points.

    :param field: scalar or vector spectral field
    :return: real array shaped like the grid (with a leading component axis for vectors)
    :raises: :class:`RealityViolation` if the coefficients are not conjugate symmetric
    """
    samples = scipy.fft.ifftn(field.coeffs, axes=_SPATIAL_AXES) * field.grid.size
    imaginary = np.abs(samples.imag).max(initial=0.0)
    scale = max(1.0, np.abs(samples.real).max(initial=0.0))
    if imaginary > REALITY_TOLERANCE * scale:
        raise RealityViolation(imaginary)
    return np.ascontiguousarray(samples.real)


def resample(field: SpectralField, nx: int, ny: int) -> SpectralField:
    """
    Trigonometric interpolation of a field onto another horizontal resolution.

    Padding splits the old Nyquist coefficient evenly between +N/2 and -N/2;
    truncation folds both into the new Nyquist coefficient.
    """
    grid = field.grid.with_shape(nx, ny)
    coeffs = _resize_axis(field.coeffs, 0, nx)
    coeffs = _resize_axis(coeffs, 1, ny)
    return SpectralField(grid, coeffs)


def _fft(values: np.ndarray, grid: Grid) -> np.ndarray:
    return scipy.fft.fftn(values, axes=_SPATIAL_AXES) / grid.size


def _resize_axis(coeffs: np.ndarray, axis: int, new_n: int) -> np.ndarray:
    old_n = coeffs.shape[axis]
    if new_n == old_n:
        return coeffs.copy()
    source = np.moveaxis(coeffs, axis, 0)
    target = np.zeros((new_n,) + source.shape[1:], dtype=complex)
    if new_n > old_n:
        half = old_n // 2
        target[:half] = source[:half]
        target[new_n - half + 1 :] = source[half + 1 :]
        target[half] = 0.5 * source[half]
        target[new_n - half] = 0.5 * source[half]
    else:
        half = new_n // 2
        target[:half] = source[:half]
        target[half + 1 :] = source[old_n - half + 1 :]
        target[half] = source[half] + source[old_n - half]
    return np.moveaxis(target, 0, axis)
