"""Linear decay of vertical fluctuations under the Rossby flow."""
import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from nsclab.calculus import vertical_average
from nsclab.constants import EXPONENTIAL, FOUR_PI_SQUARED, L2
from nsclab.exceptions import EmptySweep
from nsclab.fields import SpectralVectorField
from nsclab.norms import gradient_l2, norms
from nsclab.rates import RateFit, safe_fit_decay
from nsclab.rossby import rossby_propagate

logger = logging.getLogger(__name__)

ROSSBY_DECAY_COLUMNS = ["t", "l2", "l2_scaled", "h1", "h1_scaled"]


@dataclass(frozen=True)
class DecayRow:
    """Size of the fluctuation at one time, with and without the growth factor."""

    t: float
    l2: float
    h1: float

    @property
    def gain(self) -> float:
        """``e^{4 pi^2 t}``."""
        return math.exp(FOUR_PI_SQUARED * self.t)

    def as_json(self):
        """Return row as json dictionary, keyed by CSV column."""
        return dict(
            t=self.t,
            l2=self.l2,
            l2_scaled=self.l2 * self.gain,
            h1=self.h1,
            h1_scaled=self.h1 * self.gain,
        )


@dataclass
class DecayTable:
    """Rows in time order and the exponential fit of the L2 size."""

    rows: List[DecayRow] = field(default_factory=list)
    fit: Optional[RateFit] = None

    def scaled(self) -> np.ndarray:
        """``||u~(t)|| e^{4 pi^2 t}`` along the rows."""
        return np.array([row.l2 * row.gain for row in self.rows])

    def nonincreasing(self, tolerance: float = 1e-10) -> bool:
        """Scaled size never grows beyond ``tolerance`` relative."""
        scaled = self.scaled()
        return all(
            later <= earlier * (1.0 + tolerance)
            for earlier, later in zip(scaled, scaled[1:])
        )

    def spread(self) -> float:
        """Relative spread of the scaled size, zero for the equality case."""
        scaled = self.scaled()
        if scaled.size == 0 or scaled.max() == 0:
            return 0.0
        return float((scaled.max() - scaled.min()) / scaled.max())


def rossby_decay_experiment(
    u0: SpectralVectorField, times: Sequence[float], omega: float = 0.0
) -> DecayTable:
    """
    Propagate the vertical fluctuation of ``u0`` exactly and record its decay.

    :param u0: divergence-free velocity, only its fluctuation ``u~`` is used
    :param times: nonnegative sample times
    :param omega: rotation rate
    :return: :class:`DecayTable`
    :raises: :class:`EmptySweep` without sample times
    """
    if len(times) == 0:
        raise EmptySweep("t")
    tilde = vertical_average(u0).tilde
    table = DecayTable()
    for t in sorted(times):
        evolved = rossby_propagate(tilde, t, omega)
        table.rows.append(
            DecayRow(t=float(t), l2=norms(evolved, L2), h1=gradient_l2(evolved))
        )
    table.fit = safe_fit_decay(
        [row.t for row in table.rows],
        [row.l2 for row in table.rows],
        EXPONENTIAL,
        "l2_tilde",
        (float(min(times)), float(max(times))),
    )
    logger.info("Fitted rate %.6g of ||u~||_L2", table.fit.rate)
    return table
