import math
from dataclasses import replace

import numpy as np
import pytest
import toml

from nsclab.artifacts import Artifacts, parse_csv
from nsclab.constants import (
    DROP_MEAN,
    ENERGY_CHECK_EXPERIMENT,
    KERNEL_BOUND,
    KERNEL_FILE,
    MANIFEST_FILE,
    OSEEN,
    RANDOM_3D,
    ROSSBY_DECAY_EXPERIMENT,
    ROSSBY_DECAY_FILE,
    SIMULATE,
    SUMMARY_FILE,
    VERTICAL_SHEAR,
)
from nsclab.exceptions import CflViolation, InvalidRunConfiguration
from nsclab.experiments import (
    energy_check_state,
    omega_scan,
    run_experiment,
    target_circulation,
)
from nsclab.solver import initial_state
from nsclab.state import FlowState, circulation
from tests.util import run_config

TINY_GRID = dict(nx=8, ny=8, nz=4, box_l=20.0)


def test_simulate_writes_summary_and_manifest(tmp_path, clear_configuration):
    config = run_config(
        tmp_path,
        grid=TINY_GRID,
        time=dict(t_max=0.02, dt=0.01),
        output=dict(checkpoint_every=1, monitor_every=1),
    )

    result = run_experiment(config)

    assert result.passed
    assert result.summary["circulation_drift"] == 0.0
    summary = toml.load(tmp_path / SUMMARY_FILE)
    assert summary[SIMULATE]["passed"]
    assert (tmp_path / MANIFEST_FILE).is_file()
    names = [output_file.name for output_file in result.manifest.files]
    assert SUMMARY_FILE in names
    assert MANIFEST_FILE not in names


def test_checkpoints_of_an_earlier_run_are_cleared(tmp_path, clear_configuration):
    sections = dict(grid=TINY_GRID, time=dict(t_max=0.04, dt=0.01))
    run_experiment(
        run_config(tmp_path, output=dict(checkpoint_every=1), **sections)
    )

    result = run_experiment(
        run_config(tmp_path, output=dict(checkpoint_every=4), **sections)
    )

    assert len(Artifacts(tmp_path).checkpoint_paths()) == result.summary["checkpoints"]


def test_rossby_decay_of_the_shear(tmp_path, clear_configuration):
    config = run_config(
        tmp_path,
        run=dict(experiment=ROSSBY_DECAY_EXPERIMENT),
        grid=TINY_GRID,
        physics=dict(omega=50.0),
        init=dict(recipe=VERTICAL_SHEAR, amplitude=1.0),
        rossby_decay=dict(horizon=0.1, samples=5),
    )

    result = run_experiment(config)

    assert result.passed
    columns, rows = parse_csv((tmp_path / ROSSBY_DECAY_FILE).read_text())
    assert "t" in columns
    assert len(rows) == 5


def test_kernel_bound_writes_the_sweep(tmp_path, mocker, clear_configuration):
    sweep = mocker.Mock(bounded=False, reference_ratio=1.0, max_ratio=40.0, rows=[])
    mock_sweep = mocker.patch(
        "nsclab.experiments.kernel_bound_sweep", return_value=sweep
    )
    config = run_config(tmp_path, run=dict(experiment=KERNEL_BOUND))

    result = run_experiment(config)

    mock_sweep.assert_called_once_with(
        config.kernel.radius, config.kernel.a_values, config.kernel.b_values
    )
    assert not result.passed
    assert result.summary["max_ratio"] == 40.0
    assert (tmp_path / KERNEL_FILE).is_file()


def test_unknown_experiment(tmp_path, clear_configuration):
    config = replace(run_config(tmp_path), experiment="everything")

    with pytest.raises(InvalidRunConfiguration):
        run_experiment(config)


def test_energy_check_puts_the_fluctuation_on_the_vortex(clear_configuration):
    config = run_config(
        run=dict(experiment=ENERGY_CHECK_EXPERIMENT),
        grid=TINY_GRID,
        init=dict(recipe=RANDOM_3D, alpha=2.0, amplitude=0.1),
    )

    state = energy_check_state(config)

    assert state.alpha_background == 2.0
    assert np.any(state.u.coeffs != 0)


def test_energy_check_without_vortex(clear_configuration):
    config = run_config(
        grid=TINY_GRID,
        init=dict(recipe=RANDOM_3D, alpha=0.0, amplitude=0.1),
    )

    assert energy_check_state(config).alpha_background == 0.0


def test_omega_scan_counts_aborts_as_unbounded(
    random_velocity, mocker, clear_configuration
):
    trajectory = mocker.Mock()
    trajectory.monitors.column.return_value = np.array([0.0, 0.0])
    mocker.patch(
        "nsclab.experiments.run_flow",
        side_effect=[CflViolation(0.9, 0.1, 3.0, 3.0), trajectory],
    )
    initial = FlowState(u=random_velocity, t=0.0, omega=0.0)

    rows = omega_scan(run_config(), initial, [1000.0, 10.0], bound_factor=10.0)

    assert [row["omega"] for row in rows] == [10.0, 1000.0]
    assert rows[0]["max_l2_tilde"] == math.inf
    assert not rows[0]["bounded"]
    assert rows[1]["bounded"]


def test_manifest_ignores_outputs_of_an_earlier_experiment(
    tmp_path, clear_configuration
):
    shared = tmp_path / "shared"
    run_experiment(
        run_config(
            shared,
            run=dict(experiment=ROSSBY_DECAY_EXPERIMENT),
            grid=TINY_GRID,
            init=dict(recipe=VERTICAL_SHEAR, amplitude=1.0),
            rossby_decay=dict(horizon=0.1, samples=5),
        )
    )
    sections = dict(grid=TINY_GRID, time=dict(t_max=0.02, dt=0.01))

    after = run_experiment(run_config(shared, **sections))
    fresh = run_experiment(run_config(tmp_path / "fresh", **sections))

    names = [output_file.name for output_file in after.manifest.files]
    assert (shared / ROSSBY_DECAY_FILE).is_file()
    assert ROSSBY_DECAY_FILE not in names
    assert after.manifest.manifest_hash == fresh.manifest.manifest_hash


def test_drop_mean_run_targets_the_configured_circulation(clear_configuration):
    config = run_config(
        grid=TINY_GRID,
        init=dict(recipe=OSEEN, alpha=2.0),
        background=dict(mode=DROP_MEAN),
    )

    initial = initial_state(config)

    assert abs(circulation(initial)) < 1e-12
    assert target_circulation(config, initial) == 2.0


def test_analytic_run_targets_its_own_circulation(clear_configuration):
    config = run_config(grid=TINY_GRID, init=dict(recipe=OSEEN, alpha=2.0))

    initial = initial_state(config)

    assert target_circulation(config, initial) == circulation(initial)
