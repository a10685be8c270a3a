"""Space-time integrability of the linear Rossby flow against the rotation rate."""
import logging
import math
from dataclasses import dataclass, field
from typing import List, Sequence

import numpy as np
from scipy.integrate import trapezoid

from nsclab.constants import LINF
from nsclab.exceptions import EmptySweep
from nsclab.fields import SpectralVectorField
from nsclab.norms import norms
from nsclab.rossby import rossby_propagate

logger = logging.getLogger(__name__)

STRICHARTZ_COLUMNS = [
    "omega",
    "integral_LinfL1",
    "slope_fit_local",
    "tail_bound",
    "scaled_integral",
]


def japanese_bracket(omega: float) -> float:
    """``<Omega> = (1 + Omega^2)^(1/2)``."""
    return math.sqrt(1.0 + omega ** 2)


def tail_bound(u: SpectralVectorField) -> float:
    """
    Upper bound of ``int_T^inf ||u(t)||_Linf dt`` given ``u = u(T)``.

    Each mode keeps its Euclidean size up to the heat factor, so the sup norm is at most
    ``sum |u_mode| e^{-|xi|^2 s}``; integrating gives ``sum |u_mode| / |xi|^2``.
    """
    xi_sq = u.grid.xi_sq
    size = np.sqrt(np.sum(np.abs(u.coeffs) ** 2, axis=0))
    inverse = np.divide(1.0, xi_sq, out=np.zeros_like(xi_sq), where=xi_sq > 0)
    return float(np.sum(size * inverse))


@dataclass(frozen=True)
class StrichartzRow:
    """Time integral of the sup norm for one rotation rate."""

    omega: float
    integral: float
    slope_fit_local: float
    tail_bound: float

    @property
    def scaled_integral(self) -> float:
        """``integral * <Omega>^(1/4)``."""
        return self.integral * japanese_bracket(self.omega) ** 0.25

    def as_json(self):
        """Return row as json dictionary, keyed by CSV column."""
        return dict(
            omega=self.omega,
            integral_LinfL1=self.integral,
            slope_fit_local=self.slope_fit_local,
            tail_bound=self.tail_bound,
            scaled_integral=self.scaled_integral,
        )


@dataclass
class StrichartzTable:
    """Rows sorted by Omega and the log-log slope of integral against ``<Omega>``."""

    rows: List[StrichartzRow] = field(default_factory=list)
    slope: float = math.nan

    @property
    def flagged(self) -> bool:
        """Slope is undefined (fewer than two distinct rotation rates)."""
        return math.isnan(self.slope)

    @property
    def decreasing(self) -> bool:
        """Integral strictly decreases along the sweep."""
        integrals = [row.integral for row in self.rows]
        return all(later < earlier for earlier, later in zip(integrals, integrals[1:]))


def sup_norm_integral(
    u0: SpectralVectorField, omega: float, horizon: float, dt_sample: float
) -> float:
    """Trapezoid rule for ``int_0^T ||u(t)||_Linf dt``, samples ``dt_sample`` apart."""
    count = max(1, int(round(horizon / dt_sample)))
    times = np.linspace(0.0, horizon, count + 1)
    values = np.array(
        [norms(rossby_propagate(u0, time, omega), LINF) for time in times]
    )
    return float(trapezoid(values, times))


def strichartz_experiment(
    u0: SpectralVectorField,
    omegas: Sequence[float],
    horizon: float,
    dt_sample: float,
) -> StrichartzTable:
    """
    Integral of the sup norm of the Rossby flow over ``[0, T]`` for each Omega.

    :param u0: divergence-free, vertical-mean-free data supported in a Fourier ball
    :param omegas: rotation rates, output sorted
    :param horizon: final time ``T``
    :param dt_sample: sampling step of the sup norm
    :return: :class:`StrichartzTable`
    :raises: :class:`EmptySweep` if no rotation rate is given
    """
    if len(omegas) == 0:
        raise EmptySweep("omega")
    table = StrichartzTable()
    previous = None
    for omega in sorted(omegas):
        integral = sup_norm_integral(u0, omega, horizon, dt_sample)
        local_slope = math.nan
        if (
            previous is not None
            and omega != previous[0]  # noqa: W503
            and integral > 0  # noqa: W503
            and previous[1] > 0  # noqa: W503
        ):
            local_slope = (math.log(integral) - math.log(previous[1])) / (
                math.log(japanese_bracket(omega))
                - math.log(japanese_bracket(previous[0]))  # noqa: W503
            )
        table.rows.append(
            StrichartzRow(
                omega=float(omega),
                integral=integral,
                slope_fit_local=local_slope,
                tail_bound=tail_bound(rossby_propagate(u0, horizon, omega)),
            )
        )
        logger.info("Omega=%g integral=%.6e", omega, integral)
        previous = (omega, integral)
    distinct = sorted({row.omega for row in table.rows})
    if len(distinct) >= 2 and all(row.integral > 0 for row in table.rows):
        slope, _ = np.polyfit(
            np.log([japanese_bracket(row.omega) for row in table.rows]),
            np.log([row.integral for row in table.rows]),
            1,
        )
        table.slope = float(slope)
    return table
