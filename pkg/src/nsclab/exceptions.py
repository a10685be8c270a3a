"""Exceptions module."""
from typing import Optional, Sequence, Tuple


class NsclabException(Exception):
    """Exceptions base for nsclab."""


class InvalidRunConfiguration(NsclabException):
    """User-defined run configuration is invalid."""


class ConfigurationSyntaxError(InvalidRunConfiguration):
    """Configuration file could not be parsed."""

    def __init__(self, path: str, line: int, column: int, reason: str) -> None:
        """Exception constructor."""
        super().__init__(f"{path}:{line}:{column}: {reason}")
        self.line = line
        self.column = column


class UnknownConfigurationKey(InvalidRunConfiguration):
    """Configuration contains a key nsclab does not know."""

    def __init__(self, section: str, key: Optional[str] = None) -> None:
        """Exception constructor."""
        if key is None:
            super().__init__(f'Unknown configuration section "[{section}]".')
        else:
            super().__init__(f'Unknown configuration key "{key}" in "[{section}]".')


class MissingConfiguration(InvalidRunConfiguration):
    """Part of the run configuration is missing."""

    def __init__(self, part_name: str) -> None:
        """Exception constructor."""
        super().__init__(f'"{part_name}" is missing from run configuration.')


class NumericalAbort(NsclabException):
    """The computation cannot continue safely."""


class NonFiniteState(NumericalAbort):
    """NaN or Inf appeared in the flow state."""

    def __init__(self, time: float, last_checkpoint: Optional[str] = None) -> None:
        """Exception constructor."""
        message = f"Non-finite values in flow state at t={time:.6g}."
        if last_checkpoint is not None:
            message += f" Last valid checkpoint: {last_checkpoint}"
        super().__init__(message)
        self.last_checkpoint = last_checkpoint


class CflViolation(NumericalAbort):
    """Time step exceeds the advective stability bound."""

    def __init__(
        self, courant: float, dt: float, max_velocity: float, max_wavenumber: float
    ) -> None:
        """Exception constructor."""
        super().__init__(
            f"Advective CFL number {courant:.4g} exceeds the limit "
            f"(dt={dt:.4g}, max|u|={max_velocity:.4g}, max|k|={max_wavenumber:.4g})."
        )
        self.courant = courant


class DivergenceViolation(NumericalAbort):
    """Velocity field is not divergence free."""

    def __init__(self, relative_divergence: float) -> None:
        """Exception constructor."""
        super().__init__(
            f"Velocity divergence {relative_divergence:.3e} (relative) "
            "exceeds tolerance."
        )


class InvalidGrid(NsclabException):
    """Grid parameters are invalid."""


class GridMismatch(NsclabException):
    """Array or field does not live on the expected grid."""

    def __init__(
        self, expected: Tuple[int, ...], actual: Sequence[int]
    ) -> None:
        """Exception constructor."""
        super().__init__(f"Expected shape {expected}, got {tuple(actual)}.")


class RealityViolation(NsclabException):
    """Spectral coefficients do not describe a real field."""

    def __init__(self, imaginary_part: float) -> None:
        """Exception constructor."""
        super().__init__(
            f"Inverse transform has imaginary part {imaginary_part:.3e}; "
            "coefficients violate the reality condition."
        )


class InvalidNorm(NsclabException):
    """Norm request cannot be evaluated."""


class UndefinedSymbol(NsclabException):
    """Coriolis symbol requested at the zero mode."""

    def __init__(self) -> None:
        """Exception constructor."""
        super().__init__("Coriolis symbol is undefined at (k, n) = (0, 0).")


class NonZeroMeanMode(NsclabException):
    """Field carries vertically averaged content where none is allowed."""

    def __init__(self, magnitude: float) -> None:
        """Exception constructor."""
        super().__init__(
            f"Vorticity has n=0 content of size {magnitude:.3e}; "
            "3D Biot-Savart needs a vertical-mean-free field."
        )


class InvalidCutoff(NsclabException):
    """Fourier cutoff radius is not positive."""

    def __init__(self, radius: float) -> None:
        """Exception constructor."""
        super().__init__(f"Cutoff radius must be positive, got {radius}.")


class NegativeTime(NsclabException):
    """Propagation requested backwards in time."""

    def __init__(self, time: float) -> None:
        """Exception constructor."""
        super().__init__(f"Cannot propagate to negative time {time}.")


class EmptySweep(NsclabException):
    """Parameter sweep has no entries."""

    def __init__(self, parameter: str) -> None:
        """Exception constructor."""
        super().__init__(f'Sweep over "{parameter}" is empty.')


class InsufficientSamples(NsclabException):
    """Not enough samples for a fit."""

    def __init__(self, quantity: str, count: int, required: int) -> None:
        """Exception constructor."""
        super().__init__(
            f'Cannot fit "{quantity}": {count} samples, at least {required} needed.'
        )


class NonPositiveSamples(NsclabException):
    """Decay fit requires positive values."""

    def __init__(self, quantity: str) -> None:
        """Exception constructor."""
        super().__init__(f'Cannot fit "{quantity}": samples must be positive.')


class InvalidCheckpoint(NsclabException):
    """Checkpoint file is malformed."""


class MissingCheckpoints(NsclabException):
    """Experiment needs checkpoints that are not there."""

    def __init__(self, directory: str) -> None:
        """Exception constructor."""
        super().__init__(f"No checkpoints found in {directory}.")
