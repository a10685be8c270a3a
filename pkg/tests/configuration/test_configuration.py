import pytest
from pytest_cases import THIS_MODULE, parametrize_with_cases

from nsclab.configuration import Configuration
from nsclab.constants import SIMULATE, STRICHARTZ_EXPERIMENT
from nsclab.exceptions import (
    ConfigurationSyntaxError,
    InvalidRunConfiguration,
    MissingConfiguration,
    UnknownConfigurationKey,
)
from tests.util import run_config


def case_unknown_section():
    return {"turbulence": {"level": 3}}, UnknownConfigurationKey


def case_unknown_key():
    return {"grid": {"nw": 16}}, UnknownConfigurationKey


def case_section_not_a_table():
    return {"grid": 16}, InvalidRunConfiguration


@parametrize_with_cases(argnames=["user_configuration", "error"], cases=THIS_MODULE)
def test_merge_rejects(user_configuration, error, clear_configuration):
    with pytest.raises(error):
        Configuration.merge(user_configuration)


def test_merge_none_is_defaults(clear_configuration):
    assert Configuration.merge(None) == Configuration.default_configuration()


def test_merge_overrides_only_given_keys(clear_configuration):
    merged = Configuration.merge({"grid": {"nx": 64}})

    assert merged["grid"]["nx"] == 64
    assert merged["grid"]["ny"] == Configuration.default_configuration()["grid"]["ny"]


def test_default_configuration_is_a_copy(clear_configuration):
    Configuration.default_configuration()["grid"]["nx"] = 3

    assert Configuration.default_configuration()["grid"]["nx"] != 3


@pytest.mark.parametrize(
    "sections",
    [
        dict(grid=dict(box_l=0.0)),
        dict(time=dict(dt=-0.1)),
        dict(time=dict(t_max="long")),
        dict(output=dict(monitor_every=0)),
        dict(monitors=dict(tolerance=True)),
        dict(strichartz=dict(horizon=0)),
        dict(energy_check=dict(bound_factor=-1.0)),
        dict(run=dict(experiment="everything")),
        dict(time=dict(integrator="euler")),
        dict(init=dict(recipe="turbulent")),
        dict(background=dict(mode="ignore")),
        dict(init=dict(band=[8.0, 1.0])),
        dict(init=dict(band=[1.0])),
        dict(grid=dict(nx=16.5)),
        dict(split=dict(radius=-1.0)),
        dict(monitors=dict(delta=-0.5)),
    ],
)
def test_invalid_values(sections, clear_configuration):
    with pytest.raises(InvalidRunConfiguration):
        run_config(**sections)


def test_defaults_are_valid(clear_configuration):
    config = run_config()

    assert config.experiment == SIMULATE
    assert config.init.band == (1.0, 8.0)
    assert config.monitors.c0 == 16.0


def test_syntax_error_reports_position(tmp_path, clear_configuration):
    path = tmp_path / "broken.toml"
    path.write_text('[grid]\nnx = 16\nbox_l = nope\n')

    with pytest.raises(ConfigurationSyntaxError) as error:
        Configuration.read_file(path)

    assert error.value.line == 3
    assert str(path) in str(error.value)


def test_missing_file(tmp_path, clear_configuration):
    with pytest.raises(MissingConfiguration):
        Configuration.read_file(tmp_path / "nothing.toml")


def test_load_run_config_overrides(tmp_path, clear_configuration):
    path = tmp_path / "run.toml"
    path.write_text('[grid]\nnx = 8\n\n[init]\nseed = 3\n')

    config = Configuration.load_run_config(
        path,
        experiment=STRICHARTZ_EXPERIMENT,
        output_dir=tmp_path / "out",
        seed=11,
    )

    assert config.grid.nx == 8
    assert config.experiment == STRICHARTZ_EXPERIMENT
    assert config.output.output_dir == str(tmp_path / "out")
    assert config.init.seed == 11


def test_load_run_config_without_file(clear_configuration):
    config = Configuration.load_run_config()

    assert config == run_config()


def test_echo_leaves_output_dir_out(tmp_path, clear_configuration):
    config = run_config(tmp_path)

    assert config.as_dict()["output"]["output_dir"] == str(tmp_path)
    assert "output_dir" not in config.echo()["output"]
    assert config.echo()["run"] == {"experiment": SIMULATE}


def test_echo_does_not_depend_on_output_dir(tmp_path, clear_configuration):
    config = run_config(tmp_path / "first")

    assert config.echo() == config.with_output_dir(tmp_path / "second").echo()


def test_with_omega(clear_configuration):
    config = run_config().with_omega(250.0)

    assert config.physics.omega == 250.0
    assert config.physics.nonlinear


def test_with_unknown_experiment(clear_configuration):
    with pytest.raises(InvalidRunConfiguration):
        run_config().with_experiment("everything")
