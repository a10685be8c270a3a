"""NSCF1 checkpoint files: bit-exact storage of spectral coefficients."""
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

from nsclab.artifacts import atomic_write_bytes
from nsclab.constants import NSCF1_HEADER, NSCF1_MAGIC
from nsclab.exceptions import InvalidCheckpoint
from nsclab.fields import SpectralField, SpectralVectorField
from nsclab.grid import Grid

_COEFFICIENT_DTYPE = np.dtype("<c16")


@dataclass(frozen=True, eq=False)
class Checkpoint:
    """Field stored in a checkpoint together with its time and rotation rate."""

    field: Union[SpectralField, SpectralVectorField]
    time: float
    omega: float


def encode_checkpoint(
    field: Union[SpectralField, SpectralVectorField], time: float, omega: float
) -> bytes:
    """
    Serialize a field in NSCF1 layout.

    Magic, little-endian header ``(nx, ny, nz, L, time, omega, ncomponents)``, then
    every component as interleaved float64 ``(re, im)`` in row-major FFT order.
    """
    grid = field.grid
    coeffs = field.coeffs
    if isinstance(field, SpectralField):
        coeffs = coeffs[np.newaxis]
    header = struct.pack(
        NSCF1_HEADER,
        grid.nx,
        grid.ny,
        grid.nz,
        float(grid.box_l),
        float(time),
        float(omega),
        coeffs.shape[0],
    )
    body = np.ascontiguousarray(coeffs, dtype=_COEFFICIENT_DTYPE).tobytes(order="C")
    return NSCF1_MAGIC + header + body


def decode_checkpoint(payload: bytes) -> Checkpoint:
    """
    Parse NSCF1 bytes.

    :raises: :class:`InvalidCheckpoint` on bad magic, truncated data or a bad
     component count
    """
    if payload[: len(NSCF1_MAGIC)] != NSCF1_MAGIC:
        raise InvalidCheckpoint("File does not start with the NSCF1 magic bytes.")
    header_size = struct.calcsize(NSCF1_HEADER)
    start = len(NSCF1_MAGIC)
    if len(payload) < start + header_size:
        raise InvalidCheckpoint("Checkpoint header is truncated.")
    nx, ny, nz, box_l, time, omega, ncomponents = struct.unpack(
        NSCF1_HEADER, payload[start : start + header_size]
    )
    if ncomponents not in (1, 3):
        raise InvalidCheckpoint(f"Unsupported number of components: {ncomponents}.")
    grid = Grid(nx=nx, ny=ny, nz=nz, box_l=box_l)
    expected = ncomponents * grid.size * _COEFFICIENT_DTYPE.itemsize
    body = payload[start + header_size :]
    if len(body) != expected:
        raise InvalidCheckpoint(
            f"Checkpoint body has {len(body)} bytes, expected {expected}."
        )
    coeffs = (
        np.frombuffer(body, dtype=_COEFFICIENT_DTYPE)
        .astype(complex)
        .reshape((ncomponents,) + grid.shape)
    )
    if ncomponents == 1:
        return Checkpoint(SpectralField(grid, coeffs[0]), time, omega)
    return Checkpoint(SpectralVectorField(grid, coeffs), time, omega)


def write_checkpoint(
    path: Union[Path, str],
    field: Union[SpectralField, SpectralVectorField],
    time: float,
    omega: float,
) -> Path:
    """Write a checkpoint atomically and return its path."""
    return atomic_write_bytes(Path(path), encode_checkpoint(field, time, omega))


def read_checkpoint(path: Union[Path, str]) -> Checkpoint:
    """Read a checkpoint file."""
    return decode_checkpoint(Path(path).read_bytes())
