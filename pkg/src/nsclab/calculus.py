"""Spectral calculus: vertical average, Leray projection, curl and Biot-Savart."""
import numpy as np

from nsclab.constants import EXACT_TOLERANCE
from nsclab.exceptions import NonZeroMeanMode
from nsclab.fields import (
    FieldDecomposition,
    SpectralField,
    SpectralVectorField,
    forward_transform_vector,
)
from nsclab.grid import Grid


def symbol(grid: Grid):
    """Real derivative symbol ``(d1, d2, d3)``; the derivative symbol is ``i d``."""
    return grid.d1, grid.d2, grid.d3


def vertical_average(u: SpectralVectorField) -> FieldDecomposition:
    """
    Split a velocity into its n=0 part and the fluctuation.

    :param u: vector field
    :return: :class:`FieldDecomposition` whose parts partition the modes of ``u``
    """
    bar = np.zeros_like(u.coeffs)
    bar[..., 0] = u.coeffs[..., 0]
    tilde = u.coeffs.copy()
    tilde[..., 0] = 0.0
    return FieldDecomposition(
        bar=SpectralVectorField(u.grid, bar, u.divergence_free),
        tilde=SpectralVectorField(u.grid, tilde, u.divergence_free),
    )


def leray_project(f: SpectralVectorField) -> SpectralVectorField:
    """
    Orthogonal projection onto divergence-free fields, ``f - d (d.f) / |d|^2``.

    Modes with vanishing symbol, the (0, 0) mode among them, pass through unchanged.
    """
    grid = f.grid
    d1, d2, d3 = symbol(grid)
    d_sq = grid.d_sq
    inverse = np.divide(1.0, d_sq, out=np.zeros_like(d_sq), where=d_sq > 0)
    projection = (d1 * f.coeffs[0] + d2 * f.coeffs[1] + d3 * f.coeffs[2]) * inverse
    coeffs = np.stack(
        [
            f.coeffs[0] - d1 * projection,
            f.coeffs[1] - d2 * projection,
            f.coeffs[2] - d3 * projection,
        ]
    )
    return SpectralVectorField(grid, coeffs, divergence_free=True)


def divergence(u: SpectralVectorField) -> SpectralField:
    """Spectral divergence ``i d.u``."""
    d1, d2, d3 = symbol(u.grid)
    return SpectralField(
        u.grid, 1j * (d1 * u.coeffs[0] + d2 * u.coeffs[1] + d3 * u.coeffs[2])
    )


def relative_divergence(u: SpectralVectorField) -> float:
    """Largest mode-wise ``|d.u|`` relative to the largest ``|d||u|``."""
    grid = u.grid
    d1, d2, d3 = symbol(grid)
    numerator = np.abs(d1 * u.coeffs[0] + d2 * u.coeffs[1] + d3 * u.coeffs[2]).max()
    magnitude = np.sqrt(np.sum(np.abs(u.coeffs) ** 2, axis=0))
    denominator = (np.sqrt(grid.d_sq) * magnitude).max()
    if denominator == 0:
        return 0.0
    return float(numerator / denominator)


def gradient(f: SpectralField) -> SpectralVectorField:
    """Spectral gradient ``i d f``."""
    d1, d2, d3 = symbol(f.grid)
    return SpectralVectorField(
        f.grid, np.stack([1j * d1 * f.coeffs, 1j * d2 * f.coeffs, 1j * d3 * f.coeffs])
    )


def laplacian(f: SpectralField) -> SpectralField:
    """Spectral Laplacian ``-|xi|^2 f``."""
    return SpectralField(f.grid, -f.grid.xi_sq * f.coeffs)


def curl(u: SpectralVectorField) -> SpectralVectorField:
    """
    Mode-wise ``xi ^ u`` with ``xi = i(d1, d2, d3)``.

    :param u: velocity
    :return: vorticity, divergence free by construction
    """
    d1, d2, d3 = symbol(u.grid)
    u1, u2, u3 = u.coeffs
    coeffs = 1j * np.stack([d2 * u3 - d3 * u2, d3 * u1 - d1 * u3, d1 * u2 - d2 * u1])
    return SpectralVectorField(u.grid, coeffs, divergence_free=True)


def biot_savart_2d(w3: SpectralField) -> SpectralVectorField:
    """
    Horizontal velocity of a z-independent vertical vorticity.

    Only the n=0 plane of ``w3`` is read. Its mean is ignored and the mean velocity is
    zero, so ``curl_3`` of the result is ``w3 - mean(w3)``.
    """
    grid = w3.grid
    dh_sq = grid.dh_sq[:, :, 0]
    inverse = np.divide(1.0, dh_sq, out=np.zeros_like(dh_sq), where=dh_sq > 0)
    stream = -w3.coeffs[:, :, 0] * inverse
    coeffs = np.zeros((3,) + grid.shape, dtype=complex)
    coeffs[0, :, :, 0] = -1j * grid.d2[:, :, 0] * stream
    coeffs[1, :, :, 0] = 1j * grid.d1[:, :, 0] * stream
    return SpectralVectorField(grid, coeffs, divergence_free=True)


def biot_savart_u3bar(w1: SpectralField, w2: SpectralField) -> SpectralField:
    """
    Mean-free ``u3bar`` solving ``lap u3bar = d2 w1 - d1 w2`` on the n=0 plane.

    :param w1: first vorticity component, n=0 plane read
    :param w2: second vorticity component, n=0 plane read
    :return: scalar field supported on n=0
    """
    grid = w1.grid
    d1 = grid.d1[:, :, 0]
    d2 = grid.d2[:, :, 0]
    dh_sq = grid.dh_sq[:, :, 0]
    inverse = np.divide(1.0, dh_sq, out=np.zeros_like(dh_sq), where=dh_sq > 0)
    source = 1j * d2 * w1.coeffs[:, :, 0] - 1j * d1 * w2.coeffs[:, :, 0]
    coeffs = np.zeros(grid.shape, dtype=complex)
    coeffs[:, :, 0] = -source * inverse
    return SpectralField(grid, coeffs)


def biot_savart_3d(w: SpectralVectorField) -> SpectralVectorField:
    """
    Divergence-free fluctuation ``u`` with ``curl u = w``, ``u = xi ^ w / |xi|^2``.

    :param w: vorticity with no n=0 content
    :return: velocity fluctuation
    :raises: :class:`NonZeroMeanMode` if ``w`` has vertically averaged content
    """
    mean_part = np.abs(w.coeffs[..., 0]).max()
    if mean_part > EXACT_TOLERANCE * max(1.0, np.abs(w.coeffs).max()):
        raise NonZeroMeanMode(float(mean_part))
    grid = w.grid
    d1, d2, d3 = symbol(grid)
    inverse = np.divide(
        1.0, grid.d_sq, out=np.zeros_like(grid.d_sq), where=grid.d_sq > 0
    )
    w1, w2, w3 = w.coeffs
    coeffs = (
        1j
        * np.stack([d2 * w3 - d3 * w2, d3 * w1 - d1 * w3, d1 * w2 - d2 * w1])
        * inverse
    )
    coeffs[..., 0] = 0.0
    return SpectralVectorField(grid, coeffs, divergence_free=True)


def dealias(f):
    """Zero every mode outside the 2/3 box; accepts scalar and vector fields."""
    mask = f.grid.dealias_mask
    if isinstance(f, SpectralVectorField):
        return SpectralVectorField(f.grid, f.coeffs * mask, f.divergence_free)
    return SpectralField(f.grid, f.coeffs * mask)


def coriolis_term(u: SpectralVectorField) -> SpectralVectorField:
    """``P(e3 ^ u)``."""
    rotated = np.stack([-u.coeffs[1], u.coeffs[0], np.zeros_like(u.coeffs[2])])
    return leray_project(SpectralVectorField(u.grid, rotated))


def cross_product_physical(
    grid: Grid, a: np.ndarray, b: np.ndarray
) -> SpectralVectorField:
    """Dealiased spectral coefficients of the pointwise product ``a x b`` of samples."""
    product = np.stack(
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    )
    return dealias(forward_transform_vector(grid, product))
