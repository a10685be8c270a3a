"""Linear Rossby flow: Coriolis symbol, eigen-structure, propagator and cutoffs."""
import logging
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from nsclab.exceptions import InvalidCutoff, NegativeTime, UndefinedSymbol
from nsclab.fields import SpectralVectorField

logger = logging.getLogger(__name__)


def smoothstep(r: np.ndarray) -> np.ndarray:
    """``q(r) = r^3 (10 - 15 r + 6 r^2)`` clipped to ``[0, 1]``."""
    r = np.clip(r, 0.0, 1.0)
    return r ** 3 * (10.0 - 15.0 * r + 6.0 * r ** 2)


def chi(x: np.ndarray) -> np.ndarray:
    """Cutoff profile: 1 on ``|x| <= 1/2``, 0 on ``|x| >= 1``, smoothstep in between."""
    return smoothstep(2.0 - 2.0 * np.abs(np.asarray(x, dtype=float)))


@dataclass(frozen=True)
class CutoffBall:
    """Smooth Fourier ball of radius ``radius``."""

    radius: float

    def __post_init__(self) -> None:
        if not self.radius > 0:
            raise InvalidCutoff(self.radius)

    def multiplier(self, xi_norm: np.ndarray) -> np.ndarray:
        """``chi(|xi| / R)``."""
        return chi(xi_norm / self.radius)


@dataclass(frozen=True, eq=False)
class CoriolisEigenData:
    """Eigenvalues ``|xi|^2 +- i Omega eta`` and unit eigenvectors orthogonal to xi."""

    xi_sq: float
    eta: float
    wplus: np.ndarray
    wminus: np.ndarray


def _check_mode(k: Sequence[float], n: int) -> Tuple[np.ndarray, float]:
    a = np.array([k[0], k[1], 2.0 * np.pi * n], dtype=float)
    xi_sq = float(a @ a)
    if xi_sq == 0:
        raise UndefinedSymbol()
    return a, xi_sq


def _cross_matrix(a: np.ndarray) -> np.ndarray:
    return np.array(
        [[0.0, -a[2], a[1]], [a[2], 0.0, -a[0]], [-a[1], a[0], 0.0]], dtype=float
    )


def coriolis_symbol(k: Sequence[float], n: int, omega: float) -> np.ndarray:
    """
    ``M = |xi|^2 I + (2 i pi n Omega / |xi|^2) [xi ^ .]`` at the mode ``(k, n)``.

    Since ``-P(e3 ^ u) = (2 i pi n / |xi|^2) xi ^ u`` on a divergence-free mode, the
    Rossby flow ``du/dt + Omega P(e3 ^ u) = lap u`` reads ``du/dt + M^T u = 0``, that
    is ``M`` taken at ``-Omega``. ``M`` itself turns the other way.

    :param k: horizontal wavevector ``(k1, k2)``
    :param n: vertical mode number
    :param omega: rotation rate
    :return: complex 3x3 matrix
    :raises: :class:`UndefinedSymbol` at ``(k, n) = (0, 0)``
    """
    a, xi_sq = _check_mode(k, n)
    xi_cross = 1j * _cross_matrix(a)
    return xi_sq * np.eye(3, dtype=complex) + (
        2j * np.pi * n * omega / xi_sq
    ) * xi_cross


def eigen_data(k: Sequence[float], n: int) -> CoriolisEigenData:
    """
    Eigen-structure of the Coriolis symbol at ``(k, n)``.

    ``wplus`` belongs to ``|xi|^2 + i Omega eta``, ``wminus`` to
    ``|xi|^2 - i Omega eta``, for every Omega. Phases: first nonzero component real
    and positive.

    :raises: :class:`UndefinedSymbol` at ``(k, n) = (0, 0)``
    """
    a, xi_sq = _check_mode(k, n)
    axis = a / np.sqrt(xi_sq)
    if abs(axis[2]) < 0.9:
        reference = np.array([0.0, 0.0, 1.0])
    else:
        reference = np.array([1.0, 0.0, 0.0])
    e1 = np.cross(reference, axis)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(axis, e1)
    # axis ^ w = -i w for wplus, +i w for wminus
    wplus = _fix_phase((e1 + 1j * e2) / np.sqrt(2.0))
    wminus = _fix_phase((e1 - 1j * e2) / np.sqrt(2.0))
    return CoriolisEigenData(
        xi_sq=xi_sq, eta=float(a[2] / np.sqrt(xi_sq)), wplus=wplus, wminus=wminus
    )


def _fix_phase(vector: np.ndarray) -> np.ndarray:
    for component in vector:
        if abs(component) > 1e-14:
            return vector * (np.conj(component) / abs(component))
    return vector


def rossby_propagate(
    u0: SpectralVectorField, t: float, omega: float
) -> SpectralVectorField:
    """
    Exact solution of ``du/dt + Omega P(e3 ^ u) = lap u`` at time ``t``.

    Per mode the propagator is the heat factor ``exp(-t |xi|^2)`` times the rotation by
    the angle ``-t Omega eta`` about ``xi / |xi|``, so ``wplus`` picks up
    ``exp(i t Omega eta)`` and ``wminus`` the conjugate phase. The n=0 plane only
    feels heat.

    :param u0: initial velocity
    :param t: nonnegative time
    :param omega: rotation rate
    :return: velocity at time t
    :raises: :class:`NegativeTime` if ``t < 0``
    """
    if t < 0:
        raise NegativeTime(t)
    grid = u0.grid
    heat = np.exp(-t * grid.xi_sq)
    if t == 0:
        return SpectralVectorField(grid, u0.coeffs.copy(), u0.divergence_free)
    if omega == 0:
        return SpectralVectorField(grid, u0.coeffs * heat, u0.divergence_free)
    d_norm = np.sqrt(grid.d_sq)
    safe = np.where(d_norm > 0, d_norm, 1.0)
    axis = np.stack(
        [
            np.broadcast_to(grid.d1 / safe, grid.shape),
            np.broadcast_to(grid.d2 / safe, grid.shape),
            np.broadcast_to(grid.d3 / safe, grid.shape),
        ]
    )
    # P(e3 ^ u) = eta (axis ^ u) on divergence-free modes
    angle = -t * omega * np.where(d_norm > 0, grid.d3 / safe, 0.0)
    u = u0.coeffs
    parallel = np.sum(axis * u, axis=0)
    across = np.stack(
        [
            axis[1] * u[2] - axis[2] * u[1],
            axis[2] * u[0] - axis[0] * u[2],
            axis[0] * u[1] - axis[1] * u[0],
        ]
    )
    cosine = np.cos(angle)
    rotated = cosine * u + np.sin(angle) * across + (1.0 - cosine) * parallel * axis
    return SpectralVectorField(grid, rotated * heat, u0.divergence_free)


def fourier_cutoff(
    u: SpectralVectorField, ball: CutoffBall
) -> Tuple[SpectralVectorField, SpectralVectorField]:
    """
    Split ``u`` into ``P_R u`` and ``(1 - P_R) u``.

    :param u: velocity
    :param ball: cutoff ball
    :return: ``(low, high)``
    """
    multiplier = ball.multiplier(np.sqrt(u.grid.xi_sq))
    low = SpectralVectorField(u.grid, u.coeffs * multiplier, u.divergence_free)
    high = SpectralVectorField(u.grid, u.coeffs - low.coeffs, u.divergence_free)
    return low, high
