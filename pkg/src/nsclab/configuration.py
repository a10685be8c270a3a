"""Read, merge and validate nsclab run configurations."""
from copy import deepcopy
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, List, MutableMapping, Optional, Tuple, Union

import toml

from nsclab.constants import (
    BACKGROUND,
    BACKGROUND_MODES,
    CONVERGENCE,
    DEFAULT_CONFIGURATION_FILE,
    ENERGY_CHECK,
    EXPERIMENT,
    EXPERIMENTS,
    GRID,
    INIT,
    INTEGRATORS,
    KERNEL,
    MONITORS,
    OUTPUT,
    OUTPUT_DIR,
    PHYSICS,
    RECIPES,
    RESCALED,
    ROSSBY_DECAY,
    RUN,
    SEED,
    SPLIT,
    STRICHARTZ,
    TIME,
)
from nsclab.exceptions import (
    ConfigurationSyntaxError,
    InvalidRunConfiguration,
    MissingConfiguration,
    UnknownConfigurationKey,
)


@dataclass(frozen=True)
class GridSettings:
    """Resolution and horizontal box side."""

    nx: int
    ny: int
    nz: int
    box_l: float


@dataclass(frozen=True)
class PhysicsSettings:
    """Rotation rate and the nonlinearity switch."""

    omega: float
    nonlinear: bool = True


@dataclass(frozen=True)
class TimeSettings:
    """Time horizon, step and integrator."""

    t_max: float
    dt: float
    integrator: str


@dataclass(frozen=True)
class InitialDataRecipe:
    """Recipe name and the parameters of every recipe."""

    recipe: str
    alpha: float = 1.0
    amplitude: float = 0.1
    seed: int = 0
    spectrum_slope: float = -2.0
    band: Tuple[float, float] = (1.0, 8.0)
    zero_mean: bool = True
    perturbation_l1: float = 0.5
    path: str = ""


@dataclass(frozen=True)
class OutputSettings:
    """Where and how often to write."""

    output_dir: str
    checkpoint_every: int
    monitor_every: int


@dataclass(frozen=True)
class BackgroundSettings:
    """How the circulation of the initial data is carried."""

    mode: str


@dataclass(frozen=True)
class SplitSettings:
    """Cutoff of the low-frequency Rossby part."""

    enabled: bool
    radius: float


@dataclass(frozen=True)
class MonitorSettings:
    """Constants and tolerance of the energy inequality monitors."""

    c0: float = 16.0
    c1: float = 16.0
    delta: float = 1.0
    tolerance: float = 1e-4


@dataclass(frozen=True)
class StrichartzSettings:
    """Rotation sweep of the sup-norm integral."""

    omegas: List[float]
    horizon: float
    dt_sample: float
    radius: float


@dataclass(frozen=True)
class KernelSettings:
    """Sweep of the dispersive kernel."""

    radius: float
    a_values: List[float]
    b_values: List[float]


@dataclass(frozen=True)
class RescaledSettings:
    """Self-similar resampling and the Fokker-Planck bound check."""

    n_xi: int
    tau_values: List[float]
    p_values: List[float]
    sup_norm: bool


@dataclass(frozen=True)
class ConvergenceSettings:
    """Fitting windows of the convergence report."""

    fit_start: float
    fit_end: float


@dataclass(frozen=True)
class RossbyDecaySettings:
    """Sampling of the linear decay experiment."""

    horizon: float
    samples: int


@dataclass(frozen=True)
class EnergyCheckSettings:
    """Fitting window and rotation scan of the energy check."""

    fit_start: float
    fit_end: float
    omega_scan: List[float]
    bound_factor: float


@dataclass(frozen=True)
class RunConfig:  # pylint: disable=too-many-instance-attributes
    """Validated run configuration."""

    experiment: str
    grid: GridSettings
    physics: PhysicsSettings
    time: TimeSettings
    init: InitialDataRecipe
    output: OutputSettings
    background: BackgroundSettings
    split: SplitSettings
    monitors: MonitorSettings = field(default_factory=MonitorSettings)
    strichartz: Optional[StrichartzSettings] = None
    kernel: Optional[KernelSettings] = None
    rescaled: Optional[RescaledSettings] = None
    convergence: Optional[ConvergenceSettings] = None
    rossby_decay: Optional[RossbyDecaySettings] = None
    energy_check: Optional[EnergyCheckSettings] = None

    def as_dict(self) -> Dict[str, Any]:
        """Configuration echo, sections keyed like the TOML file."""
        echo = asdict(self)
        echo[RUN] = {EXPERIMENT: echo.pop(EXPERIMENT)}
        echo[INIT]["band"] = list(echo[INIT]["band"])
        return echo

    def echo(self) -> Dict[str, Any]:
        """:meth:`as_dict` without the output directory, as written to the manifest."""
        echo = self.as_dict()
        del echo[OUTPUT][OUTPUT_DIR]
        return echo

    def with_experiment(self, experiment: str) -> "RunConfig":
        """Same configuration for another experiment."""
        if experiment not in EXPERIMENTS:
            raise InvalidRunConfiguration(f'Unknown experiment "{experiment}".')
        return replace(self, experiment=experiment)

    def with_omega(self, omega: float) -> "RunConfig":
        """Same configuration with another rotation rate."""
        return replace(self, physics=replace(self.physics, omega=omega))

    def with_output_dir(self, output_dir: Union[Path, str]) -> "RunConfig":
        """Same configuration writing somewhere else."""
        return replace(self, output=replace(self.output, output_dir=str(output_dir)))


_POSITIVE = {
    GRID: ["box_l"],
    TIME: ["t_max", "dt"],
    OUTPUT: ["checkpoint_every", "monitor_every"],
    MONITORS: ["c0", "c1", "tolerance"],
    STRICHARTZ: ["horizon", "dt_sample", "radius"],
    KERNEL: ["radius"],
    ROSSBY_DECAY: ["horizon", "samples"],
    ENERGY_CHECK: ["bound_factor"],
}


class Configuration:
    """Default configuration merged with user-defined run configuration."""

    __default_configuration: Optional[MutableMapping[str, Any]] = None

    @classmethod
    def default_configuration(cls) -> MutableMapping[str, Any]:
        """Getter of default configuration."""
        if cls.__default_configuration is None:
            cls.__load_default_configuration()
        return deepcopy(cls.__default_configuration)

    @classmethod
    def set_default_configuration(
        cls, default_configuration: Optional[MutableMapping[str, Any]]
    ) -> None:
        """Setter of default configuration."""
        cls.__default_configuration = default_configuration

    @classmethod
    def reset_configuration(cls) -> None:
        """Forget the cached default configuration."""
        cls.set_default_configuration(None)

    @classmethod
    def read_file(cls, path: Union[Path, str]) -> MutableMapping[str, Any]:
        """
        Parse a TOML run configuration.

        :param path: configuration file
        :return: raw mapping
        :raises: :class:`ConfigurationSyntaxError` with line and column on bad syntax,
         :class:`MissingConfiguration` if the file does not exist
        """
        path = Path(path)
        if not path.exists():
            raise MissingConfiguration(str(path))
        try:
            return toml.load(path)
        except toml.TomlDecodeError as error:
            raise ConfigurationSyntaxError(
                str(path), error.lineno, error.colno, error.msg
            ) from error

    @classmethod
    def merge(
        cls, user_configuration: Optional[MutableMapping[str, Any]]
    ) -> MutableMapping[str, Any]:
        """
        Merge user sections over the defaults, section by section.

        :raises: :class:`UnknownConfigurationKey` for any section or key not present in
         the defaults
        """
        merged = cls.default_configuration()
        if user_configuration is None:
            return merged
        for section, values in user_configuration.items():
            if section not in merged:
                raise UnknownConfigurationKey(section)
            if not isinstance(values, dict):
                raise InvalidRunConfiguration(f'"[{section}]" must be a table.')
            for key, value in values.items():
                if key not in merged[section]:
                    raise UnknownConfigurationKey(section, key)
                merged[section][key] = value
        return merged

    @classmethod
    def load_run_config(
        cls,
        path: Optional[Union[Path, str]] = None,
        experiment: Optional[str] = None,
        output_dir: Optional[Union[Path, str]] = None,
        seed: Optional[int] = None,
    ) -> RunConfig:
        """
        Build a :class:`RunConfig` from a file merged over the defaults.

        :param path: TOML file, defaults only if None
        :param experiment: overrides ``[run] experiment``
        :param output_dir: overrides ``[output] output_dir``
        :param seed: overrides ``[init] seed``
        :return: validated configuration
        """
        user_configuration = None if path is None else cls.read_file(path)
        merged = cls.merge(user_configuration)
        if experiment is not None:
            merged[RUN][EXPERIMENT] = experiment
        if output_dir is not None:
            merged[OUTPUT][OUTPUT_DIR] = str(output_dir)
        if seed is not None:
            merged[INIT][SEED] = seed
        return cls.build_run_config(merged)

    @classmethod
    def build_run_config(cls, merged: MutableMapping[str, Any]) -> RunConfig:
        """Validate a merged mapping and freeze it into a :class:`RunConfig`."""
        cls.__check_positive(merged)
        experiment = merged[RUN][EXPERIMENT]
        cls.__check_choice(RUN, EXPERIMENT, experiment, EXPERIMENTS)
        cls.__check_choice(TIME, "integrator", merged[TIME]["integrator"], INTEGRATORS)
        cls.__check_choice(INIT, "recipe", merged[INIT]["recipe"], RECIPES)
        cls.__check_choice(
            BACKGROUND, "mode", merged[BACKGROUND]["mode"], BACKGROUND_MODES
        )
        band = merged[INIT]["band"]
        if len(band) != 2 or not 0 <= band[0] < band[1]:
            raise InvalidRunConfiguration(
                f"[{INIT}] band must be two increasing nonnegative numbers, got {band}."
            )
        for key in ["nx", "ny", "nz"]:
            if not isinstance(merged[GRID][key], int):
                raise InvalidRunConfiguration(f"[{GRID}] {key} must be an integer.")
        if merged[SPLIT]["radius"] < 0:
            raise InvalidRunConfiguration(f"[{SPLIT}] radius must be nonnegative.")
        if merged[MONITORS]["delta"] < 0:
            raise InvalidRunConfiguration(f"[{MONITORS}] delta must be nonnegative.")
        init = dict(merged[INIT])
        init["band"] = tuple(float(edge) for edge in band)
        return RunConfig(
            experiment=experiment,
            grid=GridSettings(**merged[GRID]),
            physics=PhysicsSettings(**merged[PHYSICS]),
            time=TimeSettings(**merged[TIME]),
            init=InitialDataRecipe(**init),
            output=OutputSettings(**merged[OUTPUT]),
            background=BackgroundSettings(**merged[BACKGROUND]),
            split=SplitSettings(**merged[SPLIT]),
            monitors=MonitorSettings(**merged[MONITORS]),
            strichartz=StrichartzSettings(**merged[STRICHARTZ]),
            kernel=KernelSettings(**merged[KERNEL]),
            rescaled=RescaledSettings(**merged[RESCALED]),
            convergence=ConvergenceSettings(**merged[CONVERGENCE]),
            rossby_decay=RossbyDecaySettings(**merged[ROSSBY_DECAY]),
            energy_check=EnergyCheckSettings(**merged[ENERGY_CHECK]),
        )

    @classmethod
    def __load_default_configuration(cls) -> None:
        cls.set_default_configuration(toml.load(DEFAULT_CONFIGURATION_FILE))

    @classmethod
    def __check_positive(cls, merged: MutableMapping[str, Any]) -> None:
        for section, keys in _POSITIVE.items():
            for key in keys:
                value = merged[section][key]
                if isinstance(value, bool) or not isinstance(value, (int, float)):
                    raise InvalidRunConfiguration(
                        f"[{section}] {key} must be a number, got {value!r}."
                    )
                if not value > 0:
                    raise InvalidRunConfiguration(
                        f"[{section}] {key} must be positive, got {value}."
                    )

    @classmethod
    def __check_choice(
        cls, section: str, key: str, value: Any, choices: List[str]
    ) -> None:
        if value not in choices:
            raise InvalidRunConfiguration(
                f'[{section}] {key} "{value}" is not one of: {", ".join(choices)}.'
            )
