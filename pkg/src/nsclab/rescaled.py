"""
Rescaled two-dimensional vorticity equation and its linear Fokker-Planck part.

In self-similar variables the vertical vorticity obeys
``w_tau = lap w - div((v - xi/2) w)`` with ``v`` the Biot-Savart velocity of ``w``.
The Gaussian ``alpha g`` is a steady state of it.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from nsclab.calculus import biot_savart_2d
from nsclab.constants import CFL_NUMBER, L1
from nsclab.exceptions import CflViolation, EmptySweep, InvalidNorm, NegativeTime
from nsclab.fields import SpectralField, forward_transform, inverse_transform
from nsclab.grid import Grid
from nsclab.norms import magnitude, norms
from nsclab.oseen import periodized_vorticity_samples, velocity_profile
from nsclab.selfsimilar import RescaledVorticity

logger = logging.getLogger(__name__)

BOUND_TOLERANCE = 1e-10
FOKKER_PLANCK_COLUMNS = [
    "tau",
    "p",
    "norm",
    "sharp_bound",
    "displayed_bound",
    "margin",
    "holds",
]


def _plane_to_field(grid: Grid, plane: np.ndarray) -> SpectralField:
    return forward_transform(grid, np.broadcast_to(plane[..., np.newaxis], grid.shape))


def _centered_points(grid: Grid) -> np.ndarray:
    x, y = grid.centered_mesh()
    return np.stack(np.broadcast_arrays(x[:, :, 0], y[:, :, 0]), axis=-1)


def transport_velocity(w: SpectralField, alpha: float) -> np.ndarray:
    """
    Biot-Savart velocity of ``w`` on the n=0 plane, shaped ``(2, nx, ny)``.

    The Gaussian of circulation ``alpha`` is carried by its closed-form velocity and
    only the remainder ``w - alpha g`` is inverted on the box.
    """
    grid = w.grid
    profile = periodized_vorticity_samples(grid, 0.0)
    remainder = w - alpha * forward_transform(grid, profile)
    velocity = inverse_transform(biot_savart_2d(remainder))[:2, :, :, 0]
    if alpha != 0:
        velocity = velocity + alpha * np.moveaxis(
            velocity_profile(_centered_points(grid)), -1, 0
        )
    return velocity


def rescaled_tendency(
    w: SpectralField, alpha: float, forcing: Optional[SpectralField] = None
) -> SpectralField:
    """Dealiased ``-div((v - xi/2) w)`` plus an optional forcing, on the n=0 plane."""
    grid = w.grid
    samples = inverse_transform(w)[:, :, 0]
    drift = transport_velocity(w, alpha) - 0.5 * np.moveaxis(
        _centered_points(grid), -1, 0
    )
    flux = drift * samples
    flux1 = _plane_to_field(grid, flux[0]).coeffs
    flux2 = _plane_to_field(grid, flux[1]).coeffs
    coeffs = -1j * (grid.d1 * flux1 + grid.d2 * flux2) * grid.dealias_mask
    coeffs[:, :, 1:] = 0.0
    tendency = SpectralField(grid, coeffs)
    if forcing is not None:
        tendency = tendency + forcing.vertical_mean()
    return tendency


def _drift_speed(w: SpectralField, alpha: float) -> float:
    drift = transport_velocity(w, alpha) - 0.5 * np.moveaxis(
        _centered_points(w.grid), -1, 0
    )
    return float(np.sqrt(np.sum(drift ** 2, axis=0)).max())


def rescaled_2d_step(
    w: RescaledVorticity, dtau: float, forcing: Optional[SpectralField] = None
) -> RescaledVorticity:
    """
    One integrating-factor Heun step of the rescaled vorticity equation.

    Heat is applied exactly per mode; drift and advection are explicit in divergence
    form, so the mass mode is untouched.

    :param w: rescaled vorticity on a fixed xi grid
    :param dtau: positive step
    :param forcing: optional extra source on the n=0 plane
    :return: :class:`RescaledVorticity` at ``tau + dtau``
    :raises: :class:`CflViolation` if ``dtau max|v - xi/2| max|k|`` exceeds 0.5
    """
    grid = w.w.grid
    alpha = w.mass
    horizontal_wavenumber = float(np.sqrt(grid.dh_sq.max()))
    speed = _drift_speed(w.w, alpha)
    courant = dtau * speed * horizontal_wavenumber
    if courant > CFL_NUMBER:
        raise CflViolation(courant, dtau, speed, horizontal_wavenumber)
    heat = np.exp(-grid.xi_sq * dtau)
    current = w.w.vertical_mean()
    k1 = rescaled_tendency(current, alpha, forcing)
    predictor = (current + k1 * dtau) * heat
    k2 = rescaled_tendency(predictor, alpha, forcing)
    advanced = (current + k1 * (0.5 * dtau)) * heat + k2 * (0.5 * dtau)
    return RescaledVorticity(
        tau=w.tau + dtau, w=advanced, mass=advanced.integral, flagged=w.flagged
    )


def fokker_planck_semigroup(w0: SpectralField, tau: float) -> SpectralField:
    """
    Exact solution at ``tau`` of ``w_tau = lap w + div(xi w) / 2`` from ``w0``.

    The continuum Fourier transform of ``w0`` (over coordinates centered in the box) is
    evaluated at the shrunk wavenumbers ``kappa e^{-tau/2}`` and damped by
    ``e^{-a(tau)|kappa|^2}``, ``a(tau) = 1 - e^{-tau}``.

    :param w0: initial vorticity, n=0 plane read
    :param tau: ``tau >= 0``
    :return: field on the n=0 plane of the same grid
    """
    if tau < 0:
        raise NegativeTime(tau)
    grid = w0.grid
    samples = inverse_transform(w0.vertical_mean())[:, :, 0]
    x, y = grid.centered_mesh()
    k1 = grid.k1[:, 0, 0]
    k2 = grid.k2[0, :, 0]
    shrink = math.exp(-tau / 2.0)
    along_x = np.exp(-1j * np.outer(k1 * shrink, x[:, 0, 0]))
    along_y = np.exp(-1j * np.outer(k2 * shrink, y[0, :, 0]))
    transform = along_x @ samples @ along_y.T * (grid.area / (grid.nx * grid.ny))
    spread = -math.expm1(-tau)
    cx, cy = grid.center
    phase = np.exp(-1j * (k1[:, np.newaxis] * cx + k2[np.newaxis, :] * cy))
    plane = transform * np.exp(-spread * grid.kh_sq[:, :, 0]) * phase / grid.area
    plane[grid.nx // 2, :] = 0.0
    plane[:, grid.ny // 2] = 0.0
    coeffs = np.zeros(grid.shape, dtype=complex)
    coeffs[:, :, 0] = plane
    return SpectralField(grid, coeffs)


def sharp_bound(l1_norm: float, tau: float, p: float) -> float:
    """``p^{-1/p} (4 pi a)^{-(1 - 1/p)} ||w||_L1``, attained by the Gaussian."""
    spread = -math.expm1(-tau)
    if math.isinf(p):
        return l1_norm / (4.0 * math.pi * spread)
    return p ** (-1.0 / p) * (4.0 * math.pi * spread) ** (-(1.0 - 1.0 / p)) * l1_norm


def displayed_bound(l1_norm: float, tau: float, p: float) -> float:
    """``||w||_L1 / (4 pi a^{1 - 1/p})``."""
    spread = -math.expm1(-tau)
    exponent = 1.0 if math.isinf(p) else 1.0 - 1.0 / p
    return l1_norm / (4.0 * math.pi * spread ** exponent)


def lp_norm(f: SpectralField, p: float) -> float:
    """``||f||_Lp`` for any ``p >= 1``, infinity included."""
    values = magnitude(f)
    if math.isinf(p):
        return float(values.max(initial=0.0))
    return float((np.sum(values ** p) * f.grid.cell_volume) ** (1.0 / p))


@dataclass(frozen=True)
class FokkerPlanckRow:
    """Smoothing estimate at one ``(tau, p)``."""

    tau: float
    p: float
    norm: float
    sharp_bound: float
    displayed_bound: float

    @property
    def margin(self) -> float:
        """``sharp_bound - norm``."""
        return self.sharp_bound - self.norm

    @property
    def holds(self) -> bool:
        """The norm is below the sharp bound up to roundoff."""
        return self.norm <= self.sharp_bound * (1.0 + BOUND_TOLERANCE)

    def as_json(self):
        """Return row as json dictionary, keyed by CSV column."""
        return dict(
            tau=self.tau,
            p=self.p,
            norm=self.norm,
            sharp_bound=self.sharp_bound,
            displayed_bound=self.displayed_bound,
            margin=self.margin,
            holds=self.holds,
        )


@dataclass
class FokkerPlanckCheck:
    """Rows of the smoothing estimate check."""

    l1_norm: float
    rows: List[FokkerPlanckRow] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        """Every row satisfies the sharp bound."""
        return all(row.holds for row in self.rows)


def fokker_planck_bound_check(
    w0: SpectralField, tau_list: Sequence[float], p_list: Sequence[float]
) -> FokkerPlanckCheck:
    """
    Check ``||S(tau) w0||_Lp`` against its L1 smoothing bound for every ``(tau, p)``.

    :param w0: initial vorticity, n=0 plane read
    :param tau_list: positive times
    :param p_list: exponents ``p >= 1``, ``math.inf`` allowed
    :return: :class:`FokkerPlanckCheck`
    """
    if len(tau_list) == 0:
        raise EmptySweep("tau")
    if len(p_list) == 0:
        raise EmptySweep("p")
    if any(tau <= 0 for tau in tau_list):
        raise InvalidNorm("Smoothing bounds need positive times.")
    w0 = w0.vertical_mean()
    l1_norm = norms(w0, L1)
    check = FokkerPlanckCheck(l1_norm=l1_norm)
    for tau in tau_list:
        evolved = fokker_planck_semigroup(w0, tau)
        for p in p_list:
            row = FokkerPlanckRow(
                tau=float(tau),
                p=float(p),
                norm=lp_norm(evolved, p),
                sharp_bound=sharp_bound(l1_norm, tau, p),
                displayed_bound=displayed_bound(l1_norm, tau, p),
            )
            if not row.holds:
                logger.warning("Smoothing bound fails at tau=%g, p=%g", tau, p)
            check.rows.append(row)
    return check
