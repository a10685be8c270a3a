"""Self-similar variables and the L1 distance to the Oseen profile."""
import logging
import math
from dataclasses import dataclass
from typing import Optional

from nsclab.constants import L1, MINIMUM_XI_BOX
from nsclab.exceptions import NegativeTime
from nsclab.fields import SpectralField, resample
from nsclab.norms import norms
from nsclab.oseen import periodized_vorticity

logger = logging.getLogger(__name__)


def gaussian_tail(side: float) -> float:
    """Mass of the unit Gaussian ``g`` outside the disk inscribed in the box."""
    return math.exp(-(side ** 2) / 16.0)


@dataclass(frozen=True, eq=False)
class RescaledVorticity:
    """
    Vertical vorticity in self-similar variables ``xi = x / sqrt(1+t)``,
    ``tau = log(1+t)``.

    ``w`` lives on the n=0 plane of a grid of side ``L / sqrt(1+t)``; ``flagged`` marks
    boxes too small for Gaussian-tail-free L1 comparisons.
    """

    tau: float
    w: SpectralField
    mass: float
    flagged: bool = False

    @property
    def t(self) -> float:
        """Physical time."""
        return math.expm1(self.tau)

    @property
    def xi_box(self) -> float:
        """Side of the xi box."""
        return self.w.grid.box_l

    @classmethod
    def from_field(cls, tau: float, w: SpectralField) -> "RescaledVorticity":
        """Wrap an n=0 field, computing mass and flag."""
        w = w.vertical_mean()
        return cls(
            tau=tau, w=w, mass=w.integral, flagged=w.grid.box_l < MINIMUM_XI_BOX
        )


def to_selfsimilar(
    w3bar: SpectralField, t: float, n_xi: Optional[int] = None
) -> RescaledVorticity:
    """
    ``w(tau, xi) = (1+t) w3bar(t, xi sqrt(1+t))`` around the box center.

    The physical grid points map onto the points of a box of side ``L / sqrt(1+t)``
    with the same resolution, so the interpolant is rescaled exactly; ``n_xi`` then
    resamples it trigonometrically.

    :param w3bar: vertical vorticity, n=0 plane read
    :param t: time ``t >= 0``
    :param n_xi: horizontal resolution of the xi grid, the input resolution by default
    :return: :class:`RescaledVorticity`, flagged when the xi box is below 20
    :raises: :class:`NegativeTime` for ``t < 0``
    """
    if t < 0:
        raise NegativeTime(t)
    scale = 1.0 + t
    grid = w3bar.grid.with_box(w3bar.grid.box_l / math.sqrt(scale))
    w = SpectralField(grid, scale * w3bar.vertical_mean().coeffs)
    if n_xi is not None and n_xi != grid.nx:
        w = resample(w, n_xi, n_xi)
    rescaled = RescaledVorticity.from_field(math.log1p(t), w)
    if rescaled.flagged:
        logger.warning(
            "xi box %.3g at t=%g is below %g; L1 comparisons carry a Gaussian tail",
            grid.box_l,
            t,
            MINIMUM_XI_BOX,
        )
    return rescaled


def oseen_distance(
    w: RescaledVorticity, alpha: float, mean_free: bool = False
) -> float:
    """
    ``||w - alpha g||_L1`` over the xi box, ``g`` periodized over the nearest images.

    A drop-mean run holds the vortex without its box mean and has zero circulation;
    compare it with ``mean_free`` and the circulation of its initial data.

    :param w: rescaled vorticity
    :param alpha: circulation of the Oseen profile
    :param mean_free: compare against ``alpha (g - mean g)`` instead
    :return: nonnegative real
    """
    profile = periodized_vorticity(w.w.grid, 0.0, alpha).vertical_mean()
    if mean_free:
        profile.coeffs[0, 0, 0] = 0.0
    return norms(w.w - profile, L1)
