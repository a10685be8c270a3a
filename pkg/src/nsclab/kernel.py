"""Dispersive kernel of the cut-off Rossby flow and its sweep over B."""
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np
from scipy.special import j0

from nsclab.constants import FOUR_PI_SQUARED
from nsclab.exceptions import EmptySweep, InvalidCutoff, InvalidNorm
from nsclab.rossby import chi

logger = logging.getLogger(__name__)

KERNEL_COLUMNS = ["A", "B", "R", "sup_K", "ratio", "window_sensitivity"]

INITIAL_PANELS = 32
MAX_REFINEMENTS = 8
REFINEMENT_TOLERANCE = 1e-4


@dataclass(frozen=True)
class KernelWindow:
    """
    Physical sampling window ``|x| <= width``, ``z`` in ``[0, 1)``.

    The kernel is radial in ``x``, so samples are taken along ``r = |x|``.
    """

    width: float
    nr: int
    nz: int = 16

    def radii(self) -> np.ndarray:
        """Radial sample positions, including 0 and ``width``."""
        return np.linspace(0.0, self.width, self.nr)

    def heights(self) -> np.ndarray:
        """Vertical sample positions."""
        return np.arange(self.nz) / self.nz

    @classmethod
    def for_radius(cls, radius: float, nz: int = 16) -> "KernelWindow":
        """Window of width ``4 / h0``, fine enough for wavenumbers up to ``2R``."""
        initial_step = 2.0 * radius / INITIAL_PANELS
        width = 4.0 / initial_step
        spacing = np.pi / (8.0 * radius)
        return cls(width=width, nr=int(math.ceil(width / spacing)) + 1, nz=nz)


@dataclass(frozen=True, eq=False)
class KernelEvaluation:
    """Sampled kernel, its sup over the window and over the inner half window."""

    radii: np.ndarray
    heights: np.ndarray
    values: np.ndarray
    sup: float
    sup_inner: float
    step: float


def vertical_modes(radius: float) -> List[int]:
    """Positive mode numbers ``n`` whose cutoff ``psi_n`` is not identically zero."""
    n_max = int(math.ceil(2.0 * radius / (2.0 * np.pi))) + 1
    return [n for n in range(1, n_max + 1) if 2.0 * np.pi * n < 2.0 * radius]


def _radial_transforms(
    a: float, b: float, radius: float, step: float, radii: np.ndarray
) -> Dict[int, np.ndarray]:
    """
    ``I_n(r) = (2 pi)^-1 int e^{-A|xi|^2 + iB eta} psi_n^2 J0(rho r) rho drho``.

    Midpoint rule in ``rho = |k|`` over ``[0, rho_max(n)]``.
    """
    transforms = {}
    for n in vertical_modes(radius):
        kz = 2.0 * np.pi * n
        rho_max = math.sqrt(4.0 * radius ** 2 - kz ** 2)
        panels = max(1, int(math.ceil(rho_max / step)))
        h = rho_max / panels
        rho = (np.arange(panels) + 0.5) * h
        xi = np.sqrt(rho ** 2 + kz ** 2)
        weights = (
            np.exp(-a * xi ** 2 + 1j * b * kz / xi)
            * chi(xi / (2.0 * radius)) ** 2
            * rho
            * h
        )
        transforms[n] = (2.0 * np.pi / FOUR_PI_SQUARED) * (
            j0(np.outer(radii, rho)) @ weights
        )
    return transforms


def _assemble(
    transforms: Dict[int, np.ndarray], heights: np.ndarray, nr: int
) -> np.ndarray:
    values = np.zeros((nr, heights.size))
    for n, transform in transforms.items():
        phase = np.exp(2j * np.pi * n * heights)
        # the -n term is the complex conjugate of the n term
        values += 2.0 * np.real(np.outer(transform, phase))
    return values


def kernel_K(
    a: float, b: float, radius: float, window: Optional[KernelWindow] = None
) -> KernelEvaluation:
    """
    Sample the kernel ``K[A, B]`` of the cut-off Rossby flow.

    The k-integral is reduced to a Hankel transform and evaluated by the midpoint rule;
    the step is halved until the sup changes by less than ``1e-4`` relative.

    :param a: heat exponent ``A >= 0``
    :param b: dispersion parameter ``B``
    :param radius: cutoff radius ``R > 0``
    :param window: sampling window, by default :meth:`KernelWindow.for_radius`
    :return: :class:`KernelEvaluation`
    """
    if a < 0:
        raise InvalidNorm(f"Heat exponent A must be nonnegative, got {a}.")
    if not radius > 0:
        raise InvalidCutoff(radius)
    window = KernelWindow.for_radius(radius) if window is None else window
    radii, heights = window.radii(), window.heights()
    step = 2.0 * radius / INITIAL_PANELS
    values = _assemble(
        _radial_transforms(a, b, radius, step, radii), heights, radii.size
    )
    sup = float(np.abs(values).max(initial=0.0))
    for _ in range(MAX_REFINEMENTS):
        step /= 2.0
        refined = _assemble(
            _radial_transforms(a, b, radius, step, radii), heights, radii.size
        )
        refined_sup = float(np.abs(refined).max(initial=0.0))
        converged = abs(refined_sup - sup) <= REFINEMENT_TOLERANCE * refined_sup
        values, sup = refined, refined_sup
        if converged or sup == 0.0:
            break
    else:
        logger.warning(
            "Kernel quadrature for A=%g, B=%g, R=%g did not settle", a, b, radius
        )
    inner = radii <= window.width / 2.0
    sup_inner = float(np.abs(values[inner]).max(initial=0.0))
    logger.debug("K[%g, %g] sup=%.6e (inner %.6e), step=%g", a, b, sup, sup_inner, step)
    return KernelEvaluation(
        radii=radii,
        heights=heights,
        values=values,
        sup=sup,
        sup_inner=sup_inner,
        step=step,
    )


@dataclass(frozen=True)
class KernelRow:
    """One cell of the kernel sweep."""

    a: float
    b: float
    radius: float
    sup: float
    ratio: float
    window_sensitivity: float

    def as_json(self):
        """Return row as json dictionary, keyed by CSV column."""
        return dict(
            A=self.a,
            B=self.b,
            R=self.radius,
            sup_K=self.sup,
            ratio=self.ratio,
            window_sensitivity=self.window_sensitivity,
        )


@dataclass
class KernelSweep:
    """Rows of ``sup|K[A,B]| sqrt|B| e^{4 pi^2 A}`` in sweep order."""

    rows: List[KernelRow] = field(default_factory=list)

    @property
    def reference_ratio(self) -> float:
        """Ratio at the smallest ``(A, |B|)``."""
        return min(self.rows, key=lambda row: (row.a, abs(row.b))).ratio

    @property
    def max_ratio(self) -> float:
        """Largest ratio of the sweep."""
        return max(row.ratio for row in self.rows)

    @property
    def bounded(self) -> bool:
        """Largest ratio is at most twice the reference ratio."""
        return self.max_ratio <= 2.0 * self.reference_ratio


def kernel_bound_sweep(
    radius: float, a_values: Sequence[float], b_values: Sequence[float]
) -> KernelSweep:
    """
    Sweep the kernel sup over ``(A, B)`` and normalize by ``e^{-4 pi^2 A} / sqrt|B|``.

    :param radius: cutoff radius
    :param a_values: heat exponents
    :param b_values: dispersion parameters, ``|B| >= 1``
    :return: :class:`KernelSweep`
    """
    if len(a_values) == 0:
        raise EmptySweep("A")
    if len(b_values) == 0:
        raise EmptySweep("B")
    if any(abs(b) < 1 for b in b_values):
        raise InvalidNorm("Kernel sweep needs |B| >= 1.")
    sweep = KernelSweep()
    for a in a_values:
        for b in b_values:
            evaluation = kernel_K(a, b, radius)
            ratio = evaluation.sup * math.sqrt(abs(b)) * math.exp(FOUR_PI_SQUARED * a)
            sensitivity = (
                0.0
                if evaluation.sup == 0
                else (evaluation.sup - evaluation.sup_inner) / evaluation.sup
            )
            sweep.rows.append(
                KernelRow(
                    a=a,
                    b=b,
                    radius=radius,
                    sup=evaluation.sup,
                    ratio=ratio,
                    window_sensitivity=sensitivity,
                )
            )
            logger.info("A=%g B=%g R=%g ratio=%.6e", a, b, radius, ratio)
    return sweep
