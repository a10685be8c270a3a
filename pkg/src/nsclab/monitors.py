"""
Energy inequality monitors along a trajectory.

Each sampled state is reduced to the norms entering the five a priori inequalities;
:class:`EnergyMonitors` then differentiates the left-hand sides in time and records the
residual ``rhs - lhs`` of every inequality.
"""
import logging
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np
from scipy.integrate import cumulative_trapezoid

from nsclab.calculus import vertical_average
from nsclab.configuration import MonitorSettings
from nsclab.constants import L1, L2, L3, L4, LINF
from nsclab.fields import SpectralField, SpectralVectorField, inverse_transform
from nsclab.grid import Grid
from nsclab.norms import gradient_l2, laplacian_l2, lebesgue_norm, norms, x_norm
from nsclab.state import (
    FlowState,
    background_velocity,
    background_vorticity,
    circulation,
    vertical_vorticity,
)

logger = logging.getLogger(__name__)

INEQUALITIES = [
    "u3bar_energy",
    "u3bar_enstrophy",
    "w3bar_energy",
    "w3bar_mass",
    "remainder_enstrophy",
]

MONITOR_COLUMNS = (
    [
        "t",
        "l2_u3bar",
        "h1_u3bar",
        "l1_w3bar",
        "l2_w3bar",
        "l3_w3bar",
        "h1_w3bar",
        "h1_tilde",
        "l4_tilde",
        "lap_tilde",
        "circulation",
        "phi",
    ]
    + [
        f"{name}_{part}"
        for name in INEQUALITIES
        for part in ["lhs", "rhs", "residual"]
    ]
    + ["x_norm"]
)


@dataclass(frozen=True)
class MonitorSample:  # pylint: disable=too-many-instance-attributes
    """Norms of one state. ``h1`` columns hold gradient L2 norms."""

    t: float
    l2_u3bar: float
    h1_u3bar: float
    lap_u3bar: float
    l1_w3bar: float
    l2_w3bar: float
    l3_w3bar: float
    h1_w3bar: float
    l2_tilde: float
    h1_tilde: float
    l4_tilde: float
    lap_tilde: float
    tilde_times_gradient: float
    h1_r: float
    lap_r: float
    l4_ubar: float
    l4_grad_lambda: float
    linf_lambda: float
    circulation: float
    x_norm: float

    @property
    def grad_ubar_sq(self) -> float:
        """``||grad ubar||^2 = ||grad u3bar||^2 + ||w3bar||^2``."""
        return self.h1_u3bar ** 2 + self.l2_w3bar ** 2

    @property
    def lap_ubar_sq(self) -> float:
        """``||lap ubar||^2 = ||lap u3bar||^2 + ||grad w3bar||^2``."""
        return self.lap_u3bar ** 2 + self.h1_w3bar ** 2


def _gradient_samples(u: SpectralVectorField) -> np.ndarray:
    """Pointwise Frobenius norm of the velocity gradient."""
    grid = u.grid
    total = np.zeros(grid.shape)
    for component in range(3):
        coeffs = u.coeffs[component]
        for d in (grid.d1, grid.d2, grid.d3):
            total += inverse_transform(SpectralField(grid, 1j * d * coeffs)) ** 2
    return np.sqrt(total)


def _speed_samples(samples: np.ndarray) -> np.ndarray:
    return np.sqrt(np.sum(samples ** 2, axis=0))


def monitor_sample(
    state: FlowState, lam: Optional[SpectralVectorField] = None
) -> MonitorSample:
    """
    Reduce a state to the quantities of the energy inequalities.

    :param state: flow state; the background vortex, if any, counts as part of ubar
    :param lam: low-frequency Rossby part of the fluctuation; zero if omitted, in which
     case the remainder ``r`` is the whole fluctuation
    :return: :class:`MonitorSample`
    """
    grid: Grid = state.grid
    decomposition = vertical_average(state.u)
    bar, tilde = decomposition.bar, decomposition.tilde
    u3bar = bar.component(2)
    w3bar = vertical_vorticity(state)
    lam = SpectralVectorField.zeros(grid) if lam is None else lam
    remainder = tilde - lam

    tilde_speed = _speed_samples(inverse_transform(tilde))
    tilde_gradient = _gradient_samples(tilde)
    ubar_samples = inverse_transform(bar)
    background = background_velocity(state)
    if background is not None:
        ubar_samples = ubar_samples + background
    volume = grid.cell_volume
    return MonitorSample(
        t=state.t,
        l2_u3bar=norms(u3bar, L2),
        h1_u3bar=gradient_l2(u3bar),
        lap_u3bar=laplacian_l2(u3bar),
        l1_w3bar=norms(w3bar, L1),
        l2_w3bar=norms(w3bar, L2),
        l3_w3bar=norms(w3bar, L3),
        h1_w3bar=gradient_l2(w3bar),
        l2_tilde=norms(tilde, L2),
        h1_tilde=gradient_l2(tilde),
        l4_tilde=lebesgue_norm(tilde_speed, volume, L4),
        lap_tilde=laplacian_l2(tilde),
        tilde_times_gradient=lebesgue_norm(tilde_speed * tilde_gradient, volume, L2),
        h1_r=gradient_l2(remainder),
        lap_r=laplacian_l2(remainder),
        l4_ubar=lebesgue_norm(_speed_samples(ubar_samples), volume, L4),
        l4_grad_lambda=lebesgue_norm(_gradient_samples(lam), volume, L4),
        linf_lambda=lebesgue_norm(
            _speed_samples(inverse_transform(lam)), volume, LINF
        ),
        circulation=circulation(state),
        x_norm=x_norm(state.u, background_vorticity(state)),
    )


def _time_derivative(times: np.ndarray, values: np.ndarray) -> np.ndarray:
    if times.size < 2:
        return np.full(times.shape, np.nan)
    return np.gradient(values, times, edge_order=2 if times.size > 2 else 1)


@dataclass
class EnergyMonitors:
    """Monitor records of a trajectory, one per sampled time."""

    samples: List[MonitorSample] = field(default_factory=list)
    settings: MonitorSettings = field(default_factory=MonitorSettings)
    records: List[Dict[str, float]] = field(default_factory=list)

    @classmethod
    def from_samples(
        cls,
        samples: Sequence[MonitorSample],
        settings: Optional[MonitorSettings] = None,
    ) -> "EnergyMonitors":
        """Evaluate the five inequalities on time-ordered samples."""
        settings = MonitorSettings() if settings is None else settings
        monitors = cls(samples=list(samples), settings=settings)
        monitors.records = monitors.__build_records()
        for name in INEQUALITIES:
            if not monitors.residual_ok(name):
                logger.warning("Energy inequality %s violated beyond tolerance", name)
        return monitors

    def column(self, name: str) -> np.ndarray:
        """One column of the records as an array."""
        return np.array([record[name] for record in self.records])

    def residual_ok(self, name: str) -> bool:
        """Residual of ``name`` is above ``-tolerance * scale`` everywhere."""
        return all(
            record[f"{name}_residual"]
            >= -self.settings.tolerance * record[f"{name}_scale"]  # noqa: W503
            for record in self.records
            if not np.isnan(record[f"{name}_residual"])
        )

    @property
    def passed(self) -> bool:
        """All inequalities hold within tolerance."""
        return all(self.residual_ok(name) for name in INEQUALITIES)

    @property
    def max_x_norm(self) -> float:
        """Largest X norm along the trajectory."""
        return float(max((sample.x_norm for sample in self.samples), default=np.nan))

    def as_rows(self) -> List[Dict[str, float]]:
        """Records restricted to :data:`MONITOR_COLUMNS`."""
        return [
            {column: record[column] for column in MONITOR_COLUMNS}
            for record in self.records
        ]

    def __build_records(self) -> List[Dict[str, float]]:
        if len(self.samples) == 0:
            return []
        settings = self.settings
        dumped = [asdict(sample) for sample in self.samples]
        columns = {
            key: np.array([values[key] for values in dumped]) for key in dumped[0]
        }
        t = columns["t"]
        grad_ubar_sq = np.array([sample.grad_ubar_sq for sample in self.samples])
        lap_ubar_sq = np.array([sample.lap_ubar_sq for sample in self.samples])
        nonlinear = columns["tilde_times_gradient"] ** 2

        terms = {}
        terms["u3bar_energy"] = (
            _time_derivative(t, columns["l2_u3bar"] ** 2),
            [-columns["h1_u3bar"] ** 2, columns["l4_tilde"] ** 4],
        )
        terms["u3bar_enstrophy"] = (
            _time_derivative(t, columns["h1_u3bar"] ** 2),
            [
                -columns["lap_u3bar"] ** 2,
                settings.c0 * columns["h1_u3bar"] ** 2 * columns["l2_w3bar"] ** 2,
                settings.c0 * nonlinear,
            ],
        )
        terms["w3bar_energy"] = (
            _time_derivative(t, columns["l2_w3bar"] ** 2),
            [-columns["h1_w3bar"] ** 2, 8.0 * nonlinear],
        )
        production = columns["l2_tilde"] * columns["lap_tilde"]
        accumulated = (
            cumulative_trapezoid(production, t, initial=0.0)
            if t.size > 1
            else np.zeros_like(t)
        )
        terms["w3bar_mass"] = (
            columns["l1_w3bar"],
            [np.full(t.shape, columns["l1_w3bar"][0]), 2.0 * accumulated],
        )
        terms["remainder_enstrophy"] = (
            _time_derivative(t, columns["h1_r"] ** 2),
            [
                -columns["lap_r"] ** 2,
                settings.c1 * columns["h1_r"] ** 2 * grad_ubar_sq * lap_ubar_sq,
                settings.c1 * columns["l4_ubar"] ** 2 * columns["l4_grad_lambda"] ** 2,
                settings.c1 * grad_ubar_sq * columns["linf_lambda"] ** 2,
                settings.c1 * nonlinear,
            ],
        )
        phi = (
            columns["l2_u3bar"] ** 2
            + columns["l2_w3bar"] ** 2  # noqa: W503
            + settings.delta * columns["h1_u3bar"] ** 2  # noqa: W503
            + columns["h1_r"] ** 2  # noqa: W503
        )

        records = []
        for index in range(t.size):
            record = {key: float(values[index]) for key, values in columns.items()}
            record["phi"] = float(phi[index])
            for name, (lhs, rhs_terms) in terms.items():
                rhs = sum(term[index] for term in rhs_terms)
                scale = max(
                    [abs(lhs[index])] + [abs(term[index]) for term in rhs_terms]
                )
                record[f"{name}_lhs"] = float(lhs[index])
                record[f"{name}_rhs"] = float(rhs)
                record[f"{name}_residual"] = float(rhs - lhs[index])
                record[f"{name}_scale"] = float(scale) if np.isfinite(scale) else 0.0
            records.append(record)
        return records


def energy_monitors(
    states: Sequence[FlowState],
    lambdas: Optional[Sequence[SpectralVectorField]] = None,
    settings: Optional[MonitorSettings] = None,
) -> EnergyMonitors:
    """
    Monitor records of a sampled trajectory.

    :param states: time-ordered states, sampled densely enough for centered differences
    :param lambdas: low-frequency Rossby parts, one per state, if the run was split
    :param settings: inequality constants and tolerance
    :return: :class:`EnergyMonitors`
    """
    lambdas = [None] * len(states) if lambdas is None else list(lambdas)
    samples = [monitor_sample(state, lam) for state, lam in zip(states, lambdas)]
    return EnergyMonitors.from_samples(samples, settings)
