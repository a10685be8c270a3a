"""Least-squares decay rates of monitored quantities."""
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from nsclab.constants import DECAY_MODELS, EXPONENTIAL, MINIMUM_FIT_SAMPLES
from nsclab.exceptions import InsufficientSamples, InvalidNorm, NonPositiveSamples


@dataclass(frozen=True)
class RateFit:  # pylint: disable=too-many-instance-attributes
    """
    Fitted decay of one quantity on a time window.

    ``rate`` is the exponential rate ``mu`` of ``e^{-mu t}`` or the algebraic exponent
    ``p`` of ``(1+t)^p``; ``residual`` is the RMS of the log-residuals.
    """

    quantity: str
    model: str
    rate: float
    residual: float
    window: Tuple[float, float]
    samples: int
    flagged: bool = False
    reason: str = ""

    @classmethod
    def degenerate(
        cls, quantity: str, model: str, window: Tuple[float, float], reason: str
    ) -> "RateFit":
        """A fit that could not be computed."""
        return cls(
            quantity=quantity,
            model=model,
            rate=math.nan,
            residual=math.nan,
            window=window,
            samples=0,
            flagged=True,
            reason=reason,
        )

    def as_json(self):
        """Return fit as json dictionary (TOML-serializable)."""
        return dict(
            quantity=self.quantity,
            model=self.model,
            rate=self.rate,
            residual=self.residual,
            window=list(self.window),
            samples=self.samples,
            flagged=self.flagged,
            reason=self.reason,
        )


def fit_decay(
    times: Sequence[float],
    values: Sequence[float],
    model: str,
    quantity: str = "value",
    window: Optional[Tuple[float, float]] = None,
) -> RateFit:
    """
    Fit ``log(value)`` linearly against ``t`` or ``log(1+t)``.

    :param times: sample times
    :param values: positive samples
    :param model: ``exponential`` or ``algebraic``
    :param quantity: name reported in the fit
    :param window: closed time window, all samples if omitted
    :return: :class:`RateFit`
    :raises: :class:`InsufficientSamples` below 8 samples in the window,
     :class:`NonPositiveSamples` if a sample in the window is not positive
    """
    if model not in DECAY_MODELS:
        raise InvalidNorm(f'Unknown decay model "{model}".')
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    if window is not None:
        selected = (times >= window[0]) & (times <= window[1])
        times, values = times[selected], values[selected]
    elif times.size > 0:
        window = (float(times.min()), float(times.max()))
    else:
        window = (math.nan, math.nan)
    if times.size < MINIMUM_FIT_SAMPLES:
        raise InsufficientSamples(quantity, int(times.size), MINIMUM_FIT_SAMPLES)
    if np.any(values <= 0) or not np.all(np.isfinite(values)):
        raise NonPositiveSamples(quantity)
    abscissa = times if model == EXPONENTIAL else np.log1p(times)
    logs = np.log(values)
    slope, intercept = np.polyfit(abscissa, logs, 1)
    residual = float(np.sqrt(np.mean((logs - (slope * abscissa + intercept)) ** 2)))
    rate = -slope if model == EXPONENTIAL else slope
    return RateFit(
        quantity=quantity,
        model=model,
        rate=float(rate),
        residual=residual,
        window=(float(window[0]), float(window[1])),
        samples=int(times.size),
    )


def safe_fit_decay(
    times: Sequence[float],
    values: Sequence[float],
    model: str,
    quantity: str,
    window: Tuple[float, float],
) -> RateFit:
    """:func:`fit_decay` returning a flagged fit instead of raising."""
    try:
        return fit_decay(times, values, model, quantity, window)
    except (InsufficientSamples, NonPositiveSamples) as error:
        return RateFit.degenerate(quantity, model, window, str(error))
