"""Experiment runners: each one writes its tables, a TOML summary and the manifest."""
import logging
import math
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np

from nsclab.artifacts import Artifacts, Manifest
from nsclab.calculus import vertical_average
from nsclab.configuration import RunConfig
from nsclab.constants import (
    CONVERGENCE_FILE,
    ENERGY_CHECK_EXPERIMENT,
    EXPONENTIAL,
    FOKKER_PLANCK_FILE,
    KERNEL_BOUND,
    KERNEL_FILE,
    DROP_MEAN,
    L2,
    OMEGA_SCAN_FILE,
    OSEEN,
    OSEEN_CONVERGENCE,
    OSEEN_PLUS_2D_PERTURBATION,
    RANDOM_3D,
    ROSSBY_DECAY_EXPERIMENT,
    ROSSBY_DECAY_FILE,
    SIMULATE,
    STRICHARTZ_EXPERIMENT,
    STRICHARTZ_FILE,
    SUMMARY_FILE,
)
from nsclab.decay import ROSSBY_DECAY_COLUMNS, rossby_decay_experiment
from nsclab.exceptions import InvalidRunConfiguration, NumericalAbort
from nsclab.initial_data import oseen_state, random_field
from nsclab.kernel import KERNEL_COLUMNS, kernel_bound_sweep
from nsclab.monitors import INEQUALITIES
from nsclab.norms import norms
from nsclab.rates import safe_fit_decay
from nsclab.report import (
    CONVERGENCE_COLUMNS,
    convergence_report,
    states_from_checkpoints,
)
from nsclab.rescaled import FOKKER_PLANCK_COLUMNS, fokker_planck_bound_check
from nsclab.rossby import CutoffBall, fourier_cutoff
from nsclab.selfsimilar import to_selfsimilar
from nsclab.solver import Trajectory, grid_of, initial_state, simulate
from nsclab.splitting import lambda_r_split_run
from nsclab.state import FlowState, circulation, vertical_vorticity
from nsclab.strichartz import STRICHARTZ_COLUMNS, strichartz_experiment

logger = logging.getLogger(__name__)

OMEGA_SCAN_COLUMNS = ["omega", "max_l2_tilde", "bounded"]

CONVERGENCE_TAU = 3.0
SCALED_INTEGRAL_BOUND = 1.2
MONOTONE_AFTER_TAU = 0.5


@dataclass
class ExperimentResult:
    """Summary of a finished experiment and the manifest of its outputs."""

    experiment: str
    summary: Dict[str, Any] = field(default_factory=dict)
    manifest: Optional[Manifest] = None

    @property
    def passed(self) -> bool:
        """Whether the checks of the experiment held."""
        return bool(self.summary.get("passed", True))


def run_experiment(config: RunConfig) -> ExperimentResult:
    """
    Run the experiment named by the configuration into its output directory.

    :param config: validated run configuration
    :return: :class:`ExperimentResult`
    :raises: :class:`InvalidRunConfiguration` for an unknown experiment,
     :class:`NumericalAbort` if the integration breaks down
    """
    runner = RUNNERS.get(config.experiment, None)
    if runner is None:
        raise InvalidRunConfiguration(f'Unknown experiment "{config.experiment}".')
    artifacts = Artifacts(config.output.output_dir)
    artifacts.clear_checkpoints()
    logger.info("Running %s into %s", config.experiment, config.output.output_dir)
    summary = runner(config, artifacts)
    artifacts.write_toml(SUMMARY_FILE, {config.experiment: summary})
    manifest = artifacts.save_manifest(config.experiment, config.echo())
    return ExperimentResult(
        experiment=config.experiment, summary=summary, manifest=manifest
    )


def run_flow(
    config: RunConfig,
    artifacts: Optional[Artifacts] = None,
    initial: Optional[FlowState] = None,
) -> Trajectory:
    """Plain or Rossby-split integration, as configured."""
    if config.split.enabled:
        return lambda_r_split_run(config, config.split.radius, artifacts, initial)
    return simulate(config, artifacts, initial)


def circulation_drift(states: Sequence[FlowState]) -> float:
    """Largest change of the circulation, relative to its initial value if nonzero."""
    values = np.array([circulation(state) for state in states])
    if values.size == 0:
        return 0.0
    drift = float(np.abs(values - values[0]).max())
    return drift / abs(values[0]) if values[0] != 0 else drift


def target_circulation(config: RunConfig, initial: FlowState) -> float:
    """
    Circulation of the vortex a run should approach.

    A drop-mean run holds none, so the configured vortex circulation is used for it.
    """
    if config.background.mode == DROP_MEAN and config.init.recipe in (
        OSEEN,
        OSEEN_PLUS_2D_PERTURBATION,
    ):
        return config.init.alpha
    return circulation(initial)


def simulate_experiment(config: RunConfig, artifacts: Artifacts) -> Dict[str, Any]:
    """Run the flow, writing checkpoints and monitors."""
    trajectory = run_flow(config, artifacts)
    monitors = trajectory.monitors
    return dict(
        passed=monitors.passed,
        t_final=trajectory.final.t,
        samples=len(trajectory.states),
        checkpoints=len(trajectory.checkpoints),
        max_x_norm=monitors.max_x_norm,
        circulation_drift=circulation_drift(trajectory.states),
        split=config.split.enabled,
    )


def strichartz_data(config: RunConfig):
    """Random vertical fluctuation restricted to the Fourier ball of the sweep."""
    recipe = config.init
    u = random_field(
        grid_of(config),
        amplitude=recipe.amplitude,
        slope=recipe.spectrum_slope,
        band=recipe.band,
        seed=recipe.seed,
        zero_mean=True,
    )
    low, _ = fourier_cutoff(u, CutoffBall(config.strichartz.radius))
    if norms(low, L2) == 0:
        logger.warning(
            "No vertical fluctuation inside the ball of radius %g",
            config.strichartz.radius,
        )
    return low


def strichartz_sweep(config: RunConfig, artifacts: Artifacts) -> Dict[str, Any]:
    """Sup-norm time integral of the Rossby flow against the rotation rate."""
    settings = config.strichartz
    table = strichartz_experiment(
        strichartz_data(config), settings.omegas, settings.horizon, settings.dt_sample
    )
    artifacts.write_csv(
        STRICHARTZ_FILE, STRICHARTZ_COLUMNS, [row.as_json() for row in table.rows]
    )
    reference = table.rows[0].scaled_integral
    scaled_ratio = (
        max(row.scaled_integral for row in table.rows) / reference
        if reference > 0
        else math.nan
    )
    return dict(
        passed=table.decreasing and scaled_ratio <= SCALED_INTEGRAL_BOUND,
        slope=table.slope,
        flagged=table.flagged,
        decreasing=table.decreasing,
        scaled_ratio=scaled_ratio,
    )


def kernel_bound(config: RunConfig, artifacts: Artifacts) -> Dict[str, Any]:
    """Sweep of the normalized kernel sup."""
    settings = config.kernel
    sweep = kernel_bound_sweep(settings.radius, settings.a_values, settings.b_values)
    artifacts.write_csv(
        KERNEL_FILE, KERNEL_COLUMNS, [row.as_json() for row in sweep.rows]
    )
    return dict(
        passed=sweep.bounded,
        reference_ratio=sweep.reference_ratio,
        max_ratio=sweep.max_ratio,
    )


def oseen_convergence(config: RunConfig, artifacts: Artifacts) -> Dict[str, Any]:
    """
    Run the flow, rebuild it from its checkpoints and measure the distance to Oseen.

    The initial vorticity in self-similar variables also goes through the smoothing
    bound check of the linear Fokker-Planck flow.
    """
    initial = initial_state(config)
    n_xi = config.rescaled.n_xi if config.rescaled.n_xi > 0 else None
    run_flow(config, artifacts, initial)
    states = states_from_checkpoints(artifacts.directory, initial.alpha_background)
    mean_free = config.background.mode == DROP_MEAN
    report = convergence_report(
        states,
        config.convergence,
        n_xi,
        alpha=target_circulation(config, initial),
        mean_free=mean_free,
    )
    artifacts.write_csv(CONVERGENCE_FILE, CONVERGENCE_COLUMNS, report.rows)

    w0 = to_selfsimilar(vertical_vorticity(initial), initial.t, n_xi).w
    p_values = list(config.rescaled.p_values)
    if config.rescaled.sup_norm:
        p_values.append(math.inf)
    check = fokker_planck_bound_check(w0, config.rescaled.tau_values, p_values)
    artifacts.write_csv(
        FOKKER_PLANCK_FILE,
        FOKKER_PLANCK_COLUMNS,
        [row.as_json() for row in check.rows],
    )
    final_tau = report.column("tau")[-1]
    distance_ratio = (
        report.distance_ratio(CONVERGENCE_TAU)
        if final_tau >= CONVERGENCE_TAU
        else math.nan
    )
    return dict(
        passed=report.monotone_after(MONOTONE_AFTER_TAU) and check.holds,
        final_tau=float(final_tau),
        distance_ratio_tau3=distance_ratio,
        monotone=report.monotone_after(MONOTONE_AFTER_TAU),
        circulation_drift=circulation_drift(states),
        fokker_planck_holds=check.holds,
        fits=report.summary(),
    )


def energy_check_state(config: RunConfig) -> FlowState:
    """
    Initial state of the energy check.

    A ``random_3d`` recipe puts the random fluctuation on top of the Oseen vortex of
    circulation ``init.alpha`` (none for ``alpha = 0``); other recipes are used as is.
    """
    if config.init.recipe != RANDOM_3D or config.init.alpha == 0:
        return initial_state(config)
    grid = grid_of(config)
    vortex = oseen_state(
        grid, config.init.alpha, config.physics.omega, config.background.mode
    )
    recipe = config.init
    fluctuation = random_field(
        grid,
        amplitude=recipe.amplitude,
        slope=recipe.spectrum_slope,
        band=recipe.band,
        seed=recipe.seed,
        zero_mean=True,
    )
    return vortex.advance((vortex.u + fluctuation).with_flag(True), 0.0)


def omega_scan(
    config: RunConfig,
    initial: FlowState,
    omegas: Sequence[float],
    bound_factor: float,
) -> List[Dict[str, Any]]:
    """Whether ``||u~||_L2`` stays below ``bound_factor`` times its initial size."""
    initial_size = norms(vertical_average(initial.u).tilde, L2)
    rows = []
    for omega in sorted(omegas):
        try:
            trajectory = run_flow(
                config.with_omega(omega), initial=replace(initial, omega=omega)
            )
            peak = float(trajectory.monitors.column("l2_tilde").max())
        except NumericalAbort as error:
            logger.warning("Omega=%g aborted: %s", omega, error)
            peak = math.inf
        bounded = peak <= bound_factor * initial_size
        logger.info("Omega=%g max||u~||=%.6e bounded=%s", omega, peak, bounded)
        rows.append(dict(omega=float(omega), max_l2_tilde=peak, bounded=bounded))
    return rows


def energy_check(config: RunConfig, artifacts: Artifacts) -> Dict[str, Any]:
    """Monitors of the energy inequalities, the H1 rate of u~ and the rotation scan."""
    settings = config.energy_check
    initial = energy_check_state(config)
    trajectory = run_flow(config, artifacts, initial)
    monitors = trajectory.monitors
    fit = safe_fit_decay(
        monitors.column("t"),
        monitors.column("h1_tilde"),
        EXPONENTIAL,
        "h1_tilde",
        (settings.fit_start, settings.fit_end),
    )
    summary = dict(
        passed=monitors.passed,
        max_x_norm=monitors.max_x_norm,
        residuals_ok={
            name: monitors.residual_ok(name)
            for name in INEQUALITIES
        },
        h1_tilde_fit=fit.as_json(),
    )
    if len(settings.omega_scan) > 0:
        rows = omega_scan(config, initial, settings.omega_scan, settings.bound_factor)
        artifacts.write_csv(OMEGA_SCAN_FILE, OMEGA_SCAN_COLUMNS, rows)
        bounded = [row["omega"] for row in rows if row["bounded"]]
        summary["smallest_bounded_omega"] = min(bounded) if bounded else math.nan
    return summary


def rossby_decay(config: RunConfig, artifacts: Artifacts) -> Dict[str, Any]:
    """Exact linear decay of the fluctuation of the configured initial data."""
    settings = config.rossby_decay
    times = np.linspace(0.0, settings.horizon, settings.samples)
    table = rossby_decay_experiment(
        initial_state(config).u, times, config.physics.omega
    )
    artifacts.write_csv(
        ROSSBY_DECAY_FILE, ROSSBY_DECAY_COLUMNS, [row.as_json() for row in table.rows]
    )
    return dict(
        passed=table.nonincreasing(),
        spread=table.spread(),
        fit=table.fit.as_json(),
    )


RUNNERS: Dict[str, Callable[[RunConfig, Artifacts], Dict[str, Any]]] = {
    SIMULATE: simulate_experiment,
    STRICHARTZ_EXPERIMENT: strichartz_sweep,
    KERNEL_BOUND: kernel_bound,
    OSEEN_CONVERGENCE: oseen_convergence,
    ENERGY_CHECK_EXPERIMENT: energy_check,
    ROSSBY_DECAY_EXPERIMENT: rossby_decay,
}
