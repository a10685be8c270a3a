"""Discretized layer: a periodic horizontal box times the unit vertical torus."""
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from nsclab.exceptions import InvalidGrid


@dataclass(frozen=True)
class Grid:
    """
    Pre-computed spectral quantities of the discretized layer.

    Vertical period is fixed to 1. Wavenumber arrays are shaped for broadcasting
    against ``(nx, ny, nz)`` coefficient arrays and follow the FFT ordering
    ``0 ... N/2-1, -N/2, ... -1``.
    """

    nx: int
    ny: int
    nz: int
    box_l: float

    def __post_init__(self) -> None:
        for name in ("nx", "ny", "nz"):
            value = getattr(self, name)
            if int(value) != value or value < 4 or value % 2 != 0:
                raise InvalidGrid(f"{name} must be an even integer >= 4, got {value}.")
        if not self.box_l > 0:
            raise InvalidGrid(f"box_l must be positive, got {self.box_l}.")

        m1 = np.fft.fftfreq(self.nx, d=1.0 / self.nx)
        m2 = np.fft.fftfreq(self.ny, d=1.0 / self.ny)
        n = np.fft.fftfreq(self.nz, d=1.0 / self.nz)
        object.__setattr__(self, "m1", m1.reshape(-1, 1, 1))
        object.__setattr__(self, "m2", m2.reshape(1, -1, 1))
        object.__setattr__(self, "n", n.reshape(1, 1, -1))

        k1 = 2.0 * np.pi * self.m1 / self.box_l
        k2 = 2.0 * np.pi * self.m2 / self.box_l
        k3 = 2.0 * np.pi * self.n
        object.__setattr__(self, "k1", k1)
        object.__setattr__(self, "k2", k2)
        object.__setattr__(self, "k3", k3)
        object.__setattr__(self, "kh_sq", k1 ** 2 + k2 ** 2)
        object.__setattr__(self, "xi_sq", k1 ** 2 + k2 ** 2 + k3 ** 2)

        # First-derivative symbol: the unpaired Nyquist entry carries no derivative.
        d1 = np.where(np.abs(self.m1) == self.nx // 2, 0.0, k1)
        d2 = np.where(np.abs(self.m2) == self.ny // 2, 0.0, k2)
        d3 = np.where(np.abs(self.n) == self.nz // 2, 0.0, k3)
        object.__setattr__(self, "d1", d1)
        object.__setattr__(self, "d2", d2)
        object.__setattr__(self, "d3", d3)
        object.__setattr__(self, "dh_sq", d1 ** 2 + d2 ** 2)
        object.__setattr__(self, "d_sq", d1 ** 2 + d2 ** 2 + d3 ** 2)

        dealias_mask = (
            (np.abs(self.m1) <= self.nx / 3)
            & (np.abs(self.m2) <= self.ny / 3)
            & (np.abs(self.n) <= self.nz / 3)
        )
        object.__setattr__(self, "dealias_mask", dealias_mask)

    @property
    def shape(self) -> Tuple[int, int, int]:
        """Physical and spectral array shape."""
        return self.nx, self.ny, self.nz

    @property
    def size(self) -> int:
        """Number of grid points."""
        return self.nx * self.ny * self.nz

    @property
    def area(self) -> float:
        """Horizontal box area (the volume of the layer, since the period is 1)."""
        return self.box_l ** 2

    @property
    def cell_volume(self) -> float:
        """Quadrature weight of a grid point."""
        return self.area / (self.nx * self.ny * self.nz)

    @property
    def center(self) -> Tuple[float, float]:
        """Horizontal box center, where vortices are placed."""
        return self.box_l / 2.0, self.box_l / 2.0

    @property
    def max_wavenumber(self) -> float:
        """Largest magnitude of the derivative symbol."""
        return float(np.sqrt(self.d_sq.max()))

    def coordinates(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """One dimensional sample positions along x, y and z."""
        return (
            self.box_l * np.arange(self.nx) / self.nx,
            self.box_l * np.arange(self.ny) / self.ny,
            np.arange(self.nz) / self.nz,
        )

    def centered_mesh(self) -> Tuple[np.ndarray, np.ndarray]:
        """Horizontal positions relative to the box center, shaped ``(nx, ny, 1)``."""
        x, y, _ = self.coordinates()
        cx, cy = self.center
        return (x - cx).reshape(-1, 1, 1), (y - cy).reshape(1, -1, 1)

    def with_box(self, box_l: float) -> "Grid":
        """Same resolution on a box of different side."""
        return Grid(nx=self.nx, ny=self.ny, nz=self.nz, box_l=box_l)

    def with_shape(self, nx: int, ny: int) -> "Grid":
        """Same box with a different horizontal resolution."""
        return Grid(nx=nx, ny=ny, nz=self.nz, box_l=self.box_l)

    def as_json(self):
        """Return grid as json dictionary."""
        return dict(nx=self.nx, ny=self.ny, nz=self.nz, box_l=self.box_l)
