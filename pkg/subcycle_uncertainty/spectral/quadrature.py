"""Composite Gauss-Legendre grids on the positive frequency axis."""

import logging
import math

import numpy as np
from numpy.polynomial.legendre import leggauss

from subcycle_uncertainty.errors import ConfigError
from subcycle_uncertainty.models import FrequencyGrid, GaussianModeParams
from subcycle_uncertainty.utils.constants import DEFAULT_CUTOFF_SIGMAS

logger = logging.getLogger(__name__)


def build_grid(omega_max: float, panels: int, order: int) -> FrequencyGrid:
    """Build a composite Gauss-Legendre rule on [0, omega_max].

    The interval is split into ``panels`` equal panels with an ``order``-point
    rule on each. Nodes are interior, so omega = 0 is never sampled.

    Args:
        omega_max: Upper cutoff frequency
        panels: Number of equal-width panels
        order: Number of Gauss-Legendre points per panel

    Returns:
        FrequencyGrid with ``panels * order`` sorted nodes

    Raises:
        ConfigError: If omega_max is not positive or panels/order are too small
    """
    if not math.isfinite(omega_max) or omega_max <= 0:
        raise ConfigError(f"omega_max must be positive and finite, got {omega_max}")
    if panels < 1:
        raise ConfigError(f"panels must be at least 1, got {panels}")
    if order < 2:
        raise ConfigError(f"order must be at least 2, got {order}")

    x, w = leggauss(order)
    edges = np.linspace(0.0, omega_max, panels + 1)
    half = 0.5 * np.diff(edges)
    centers = 0.5 * (edges[:-1] + edges[1:])

    nodes = (centers[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()

    logger.debug(
        f"Built grid with {nodes.size} nodes on [0, {omega_max}] "
        f"({panels} panels, order {order})"
    )
    return FrequencyGrid(nodes=nodes, weights=weights, omega_max=float(omega_max))


def mode_cutoff(
    p: GaussianModeParams, cutoff_sigmas: float = DEFAULT_CUTOFF_SIGMAS
) -> float:
    """Cutoff frequency omega0 + cutoff_sigmas * sigma for a Gaussian mode."""
    return p.omega0 + cutoff_sigmas * p.sigma


def grid_for_mode(
    p: GaussianModeParams,
    panels: int,
    order: int,
    cutoff_sigmas: float = DEFAULT_CUTOFF_SIGMAS,
) -> FrequencyGrid:
    """Build a grid covering the spectral support of a Gaussian mode."""
    return build_grid(mode_cutoff(p, cutoff_sigmas), panels, order)


def integrate(grid: FrequencyGrid, values: np.ndarray) -> complex:
    """Apply the quadrature rule to samples taken at the grid nodes."""
    values = np.asarray(values)
    if values.shape != (grid.size,):
        raise ConfigError(
            f"expected {grid.size} samples, got array of shape {values.shape}"
        )
    return complex(np.dot(grid.weights, values))
