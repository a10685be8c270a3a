"""Convergence of a trajectory towards the Oseen vortex, and its decay-rate summary."""
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import numpy as np

from nsclab.calculus import vertical_average
from nsclab.checkpoint import read_checkpoint
from nsclab.configuration import ConvergenceSettings
from nsclab.constants import ALGEBRAIC, CHECKPOINT_GLOB, EXPONENTIAL, L2, L3
from nsclab.exceptions import InvalidCheckpoint, MissingCheckpoints
from nsclab.fields import SpectralVectorField
from nsclab.norms import gradient_l2, norms
from nsclab.rates import RateFit, safe_fit_decay
from nsclab.selfsimilar import gaussian_tail, oseen_distance, to_selfsimilar
from nsclab.state import FlowState, circulation, vertical_vorticity

logger = logging.getLogger(__name__)

CONVERGENCE_COLUMNS = [
    "t",
    "tau",
    "oseen_L1_distance",
    "h1_tilde",
    "h1_u3bar",
    "scaled_l2_w3bar",
    "scaled_h1_w3bar",
    "l3_w3bar",
    "xi_box",
    "gaussian_tail",
    "flagged",
]

RIPPLE = 0.05


@dataclass
class ConvergenceReport:
    """Rows of :data:`CONVERGENCE_COLUMNS` and the fitted decay rates."""

    rows: List[Dict[str, float]] = field(default_factory=list)
    fits: List[RateFit] = field(default_factory=list)

    def column(self, name: str) -> np.ndarray:
        """One column as an array."""
        return np.array([row[name] for row in self.rows], dtype=float)

    def distance_at(self, tau: float) -> float:
        """Oseen distance at the sample closest to ``tau``."""
        taus = self.column("tau")
        return float(self.column("oseen_L1_distance")[np.abs(taus - tau).argmin()])

    def distance_ratio(self, tau: float) -> float:
        """Distance at ``tau`` relative to the initial one."""
        initial = self.column("oseen_L1_distance")[0]
        if initial == 0:
            return math.nan
        return self.distance_at(tau) / initial

    def monotone_after(self, tau: float, ripple: float = RIPPLE) -> bool:
        """Distance never grows by more than ``ripple`` relative after ``tau``."""
        taus = self.column("tau")
        distances = self.column("oseen_L1_distance")[taus >= tau]
        return all(
            later <= earlier * (1.0 + ripple)
            for earlier, later in zip(distances, distances[1:])
        )

    def summary(self) -> Dict[str, Dict[str, object]]:
        """Fits keyed by quantity, ready for a TOML summary."""
        return {fit.quantity: fit.as_json() for fit in self.fits}


def convergence_report(
    states: Sequence[FlowState],
    settings: Optional[ConvergenceSettings] = None,
    n_xi: Optional[int] = None,
    alpha: Optional[float] = None,
    mean_free: bool = False,
) -> ConvergenceReport:
    """
    Distance to the Oseen vortex of matching circulation and the decay monitors.

    :param states: time-ordered trajectory samples
    :param settings: time window of the rate fits
    :param n_xi: resolution of the xi grid, the run resolution if omitted
    :param alpha: circulation of the target vortex, each state's own if omitted
    :param mean_free: states hold the vortex without its box mean (drop-mean runs)
    :return: :class:`ConvergenceReport`
    """
    settings = ConvergenceSettings(0.5, 2.0) if settings is None else settings
    report = ConvergenceReport()
    for state in states:
        decomposition = vertical_average(state.u)
        w3bar = vertical_vorticity(state)
        rescaled = to_selfsimilar(w3bar, state.t, n_xi)
        t = state.t
        report.rows.append(
            dict(
                t=t,
                tau=rescaled.tau,
                oseen_L1_distance=oseen_distance(
                    rescaled,
                    circulation(state) if alpha is None else alpha,
                    mean_free,
                ),
                h1_tilde=gradient_l2(decomposition.tilde),
                h1_u3bar=gradient_l2(decomposition.bar.component(2)),
                scaled_l2_w3bar=(1.0 + t) * norms(w3bar, L2) ** 2,
                scaled_h1_w3bar=t * (1.0 + t) * gradient_l2(w3bar) ** 2,
                l3_w3bar=norms(w3bar, L3),
                xi_box=rescaled.xi_box,
                gaussian_tail=gaussian_tail(rescaled.xi_box),
                flagged=rescaled.flagged,
            )
        )
    window = (settings.fit_start, settings.fit_end)
    times = report.column("t")
    positive = times > 0
    l2_squared = report.column("scaled_l2_w3bar") / (1.0 + times)
    h1_squared = report.column("scaled_h1_w3bar")[positive] / (
        times[positive] * (1.0 + times[positive])
    )
    report.fits = [
        safe_fit_decay(
            times, report.column("h1_tilde"), EXPONENTIAL, "h1_tilde", window
        ),
        safe_fit_decay(times, l2_squared, ALGEBRAIC, "l2_w3bar_squared", window),
        safe_fit_decay(
            times[positive], h1_squared, ALGEBRAIC, "h1_w3bar_squared", window
        ),
    ]
    for fit in report.fits:
        if fit.flagged:
            logger.info("Fit of %s flagged: %s", fit.quantity, fit.reason)
    return report


def states_from_checkpoints(
    directory: Path, alpha_background: float = 0.0
) -> List[FlowState]:
    """
    Rebuild trajectory samples from the NSCF1 checkpoints of a directory.

    :param directory: output directory of a run
    :param alpha_background: circulation carried in closed form during the run
    :raises: :class:`MissingCheckpoints` if there are none
    """
    paths = sorted(Path(directory).glob(CHECKPOINT_GLOB))
    if len(paths) == 0:
        raise MissingCheckpoints(str(directory))
    states = []
    for path in paths:
        checkpoint = read_checkpoint(path)
        if not isinstance(checkpoint.field, SpectralVectorField):
            raise InvalidCheckpoint(f"{path} does not hold a velocity.")
        states.append(
            FlowState(
                u=checkpoint.field.with_flag(True),
                t=checkpoint.time,
                omega=checkpoint.omega,
                alpha_background=alpha_background,
            )
        )
    return sorted(states, key=lambda state: state.t)
