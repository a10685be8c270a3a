"""Closed forms of the Lamb-Oseen vortex and its periodized vorticity on the grid."""
import numpy as np

from nsclab.fields import SpectralField, forward_transform
from nsclab.grid import Grid

_SMALL_RADIUS = 1e-8


def gaussian_profile(xi: np.ndarray) -> np.ndarray:
    """``g(xi) = exp(-|xi|^2 / 4) / (4 pi)`` for points shaped ``(..., 2)``."""
    xi = np.asarray(xi, dtype=float)
    return np.exp(-np.sum(xi ** 2, axis=-1) / 4.0) / (4.0 * np.pi)


def velocity_profile(xi: np.ndarray) -> np.ndarray:
    """
    ``(1 - exp(-|xi|^2/4)) / (2 pi |xi|^2) xi^perp``, ``xi^perp / (8 pi)`` at 0.

    :param xi: points shaped ``(..., 2)``
    :return: horizontal velocity shaped ``(..., 2)``
    """
    xi = np.asarray(xi, dtype=float)
    s = np.sum(xi ** 2, axis=-1)
    safe = np.where(s > _SMALL_RADIUS, s, 1.0)
    factor = np.where(
        s > _SMALL_RADIUS,
        -np.expm1(-safe / 4.0) / (2.0 * np.pi * safe),
        (1.0 - s / 8.0) / (8.0 * np.pi),
    )
    return np.stack([-factor * xi[..., 1], factor * xi[..., 0]], axis=-1)


def oseen_velocity(xi: np.ndarray, t: float) -> np.ndarray:
    """
    Velocity of the unit-circulation Oseen vortex at time ``t``.

    :param xi: points shaped ``(..., 2)``, relative to the vortex center
    :param t: time
    :return: velocity shaped ``(..., 3)``, third component zero
    """
    scale = np.sqrt(1.0 + t)
    horizontal = velocity_profile(np.asarray(xi, dtype=float) / scale) / scale
    return np.concatenate([horizontal, np.zeros(horizontal.shape[:-1] + (1,))], axis=-1)


def oseen_vorticity(xi: np.ndarray, t: float) -> np.ndarray:
    """Vorticity ``(0, 0, g(xi / sqrt(1+t)) / (1+t))`` shaped ``(..., 3)``."""
    xi = np.asarray(xi, dtype=float)
    vertical = gaussian_profile(xi / np.sqrt(1.0 + t)) / (1.0 + t)
    zeros = np.zeros_like(vertical)
    return np.stack([zeros, zeros, vertical], axis=-1)


def sampled_velocity(grid: Grid, t: float) -> np.ndarray:
    """Oseen velocity at the grid points, centered, shaped ``(3, nx, ny, nz)``."""
    x, y = grid.centered_mesh()
    points = np.stack(np.broadcast_arrays(x[:, :, 0], y[:, :, 0]), axis=-1)
    planar = oseen_velocity(points, t)
    return np.broadcast_to(
        np.moveaxis(planar, -1, 0)[..., np.newaxis], (3,) + grid.shape
    ).copy()


def periodized_vorticity_samples(grid: Grid, t: float, images: int = 1) -> np.ndarray:
    """
    ``g`` summed over the nearest periodic images, shaped like the grid.

    :param grid: grid
    :param t: time
    :param images: number of image layers on each side
    """
    x, y = grid.centered_mesh()
    samples = np.zeros(grid.shape[:2])
    for i in range(-images, images + 1):
        for j in range(-images, images + 1):
            points = np.stack(
                np.broadcast_arrays(
                    x[:, :, 0] + i * grid.box_l, y[:, :, 0] + j * grid.box_l
                ),
                axis=-1,
            )
            samples += gaussian_profile(points / np.sqrt(1.0 + t)) / (1.0 + t)
    return np.broadcast_to(samples[..., np.newaxis], grid.shape).copy()


def periodized_vorticity(grid: Grid, t: float, alpha: float = 1.0) -> SpectralField:
    """Spectral coefficients of ``alpha`` times the periodized Oseen vorticity."""
    return forward_transform(grid, alpha * periodized_vorticity_samples(grid, t))
