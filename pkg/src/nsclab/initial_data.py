"""Initial data: Oseen vortex, perturbations, random and sheared fluctuations."""
import logging
from pathlib import Path

import numpy as np

from nsclab.calculus import biot_savart_2d, dealias, leray_project, relative_divergence
from nsclab.checkpoint import read_checkpoint
from nsclab.configuration import InitialDataRecipe
from nsclab.constants import (
    ANALYTIC,
    DIVERGENCE_TOLERANCE,
    FILE,
    L1,
    L2,
    OSEEN,
    OSEEN_PLUS_2D_PERTURBATION,
    RANDOM_3D,
    VERTICAL_SHEAR,
    ZERO,
)
from nsclab.exceptions import (
    DivergenceViolation,
    GridMismatch,
    InvalidCheckpoint,
    InvalidRunConfiguration,
    MissingConfiguration,
)
from nsclab.fields import SpectralField, SpectralVectorField, forward_transform
from nsclab.grid import Grid
from nsclab.norms import norms
from nsclab.oseen import periodized_vorticity
from nsclab.state import FlowState

logger = logging.getLogger(__name__)

PERTURBATION_BLOBS = 4


def make_initial_data(
    recipe: InitialDataRecipe,
    grid: Grid,
    omega: float = 0.0,
    background_mode: str = ANALYTIC,
) -> FlowState:
    """
    Build the initial flow state described by a recipe.

    :param recipe: recipe name and parameters
    :param grid: grid of the run
    :param omega: rotation rate
    :param background_mode: ``analytic`` carries the vortex circulation in closed form;
     ``drop-mean`` puts the periodized vortex into the spectral field without its mean
    :return: divergence-free :class:`FlowState` at its initial time
    :raises: :class:`InvalidRunConfiguration` for an unknown recipe,
     :class:`DivergenceViolation` for a file that is not divergence free
    """
    logger.info("Building initial data from recipe %s", recipe.recipe)
    if recipe.recipe == ZERO:
        return FlowState(u=SpectralVectorField.zeros(grid), t=0.0, omega=omega)
    if recipe.recipe == OSEEN:
        return oseen_state(grid, recipe.alpha, omega, background_mode)
    if recipe.recipe == OSEEN_PLUS_2D_PERTURBATION:
        vortex = oseen_state(grid, recipe.alpha, omega, background_mode)
        perturbation = biot_savart_2d(
            blob_perturbation(grid, recipe.perturbation_l1, recipe.seed)
        )
        return vortex.advance(dealias(vortex.u + perturbation).with_flag(True), 0.0)
    if recipe.recipe == RANDOM_3D:
        u = random_field(
            grid,
            amplitude=recipe.amplitude,
            slope=recipe.spectrum_slope,
            band=recipe.band,
            seed=recipe.seed,
            zero_mean=recipe.zero_mean,
        )
        return FlowState(u=u, t=0.0, omega=omega)
    if recipe.recipe == VERTICAL_SHEAR:
        return FlowState(u=vertical_shear(grid, recipe.amplitude), t=0.0, omega=omega)
    if recipe.recipe == FILE:
        return file_state(recipe, grid, omega, background_mode)
    raise InvalidRunConfiguration(f'Unknown initial data recipe "{recipe.recipe}".')


def oseen_state(
    grid: Grid, alpha: float, omega: float, background_mode: str = ANALYTIC
) -> FlowState:
    """Oseen vortex of circulation ``alpha`` centered in the box, at ``t = 0``."""
    if background_mode == ANALYTIC:
        return FlowState(
            u=SpectralVectorField.zeros(grid).with_flag(True),
            t=0.0,
            omega=omega,
            alpha_background=alpha,
        )
    u = dealias(biot_savart_2d(periodized_vorticity(grid, 0.0, alpha)))
    return FlowState(u=u.with_flag(True), t=0.0, omega=omega)


def blob_perturbation(grid: Grid, l1_size: float, seed: int) -> SpectralField:
    """
    Mean-free sum of Gaussian blobs near the box center, scaled to a given L1 norm.

    :param grid: grid
    :param l1_size: L1 norm of the result
    :param seed: random seed
    :return: vertical vorticity supported on n=0
    """
    rng = np.random.default_rng(seed)
    offsets = rng.normal(0.0, 2.0, size=(PERTURBATION_BLOBS, 2))
    widths = rng.uniform(0.8, 1.5, size=PERTURBATION_BLOBS)
    weights = rng.normal(size=PERTURBATION_BLOBS)
    weights -= weights.mean()
    x, y = grid.centered_mesh()
    samples = np.zeros(grid.shape[:2])
    for (dx, dy), width, weight in zip(offsets, widths, weights):
        radius_sq = (x[:, :, 0] - dx) ** 2 + (y[:, :, 0] - dy) ** 2
        samples = samples + weight * np.exp(-radius_sq / (4.0 * width ** 2)) / (
            4.0 * np.pi * width ** 2
        )
    field = forward_transform(
        grid, np.broadcast_to(samples[..., np.newaxis], grid.shape)
    )
    field.coeffs[0, 0, 0] = 0.0
    size = norms(field, L1)
    if size == 0:
        return field
    return field * (l1_size / size)


def random_field(
    grid: Grid,
    amplitude: float,
    slope: float,
    band,
    seed: int,
    zero_mean: bool = True,
) -> SpectralVectorField:
    """
    Seeded divergence-free random velocity with a power-law spectrum.

    White noise is transformed, shaped by ``|xi|^slope`` inside ``band[0] <= |xi| <=
    band[1]``, projected, dealiased and scaled to L2 norm ``amplitude``.

    :param zero_mean: remove the vertically averaged part
    """
    rng = np.random.default_rng(seed)
    noise = rng.standard_normal((3,) + grid.shape)
    xi = np.sqrt(grid.xi_sq)
    low, high = band
    envelope = np.where(
        (xi >= low) & (xi <= high) & (xi > 0),
        np.power(xi, slope, out=np.zeros_like(xi), where=xi > 0),
        0.0,
    )
    coeffs = np.stack(
        [forward_transform(grid, noise[index]).coeffs for index in range(3)]
    )
    u = dealias(leray_project(SpectralVectorField(grid, coeffs * envelope)))
    if zero_mean:
        u.coeffs[..., 0] = 0.0
    size = norms(u, L2)
    if size == 0:
        logger.warning("Random data band %s holds no mode of the grid", band)
        return u
    return u * (amplitude / size)


def vertical_shear(grid: Grid, amplitude: float) -> SpectralVectorField:
    """``amplitude (cos 2 pi z, sin 2 pi z, 0)``: a field on the modes k=0, n=+-1."""
    coeffs = np.zeros((3,) + grid.shape, dtype=complex)
    coeffs[0, 0, 0, 1] = coeffs[0, 0, 0, -1] = 0.5 * amplitude
    coeffs[1, 0, 0, 1] = -0.5j * amplitude
    coeffs[1, 0, 0, -1] = 0.5j * amplitude
    return SpectralVectorField(grid, coeffs, divergence_free=True)


def file_state(
    recipe: InitialDataRecipe, grid: Grid, omega: float, background_mode: str
) -> FlowState:
    """
    Restart from an NSCF1 checkpoint.

    The checkpoint time becomes the initial time. With the analytic background the
    vortex of circulation ``recipe.alpha`` is carried on top of the stored field.
    """
    if not Path(recipe.path).is_file():
        raise MissingConfiguration(recipe.path)
    checkpoint = read_checkpoint(recipe.path)
    u = checkpoint.field
    if not isinstance(u, SpectralVectorField):
        raise InvalidCheckpoint("Initial data checkpoint must hold a vector field.")
    if u.grid != grid:
        raise GridMismatch(grid.shape, u.grid.shape)
    divergence = relative_divergence(u)
    if divergence > DIVERGENCE_TOLERANCE:
        raise DivergenceViolation(divergence)
    alpha = recipe.alpha if background_mode == ANALYTIC else 0.0
    return FlowState(
        u=u.with_flag(True), t=checkpoint.time, omega=omega, alpha_background=alpha
    )
