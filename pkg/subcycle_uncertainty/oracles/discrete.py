"""Gaussian mode expanded over discrete field bins.

Each grid node omega_k carries an independent field mode b_k with weight w_k, so
a_g = sum_k sqrt(w_k) (f_g(omega_k) b_k + f_g(-omega_k) b_k^dag).
"""

import logging

import numpy as np

from subcycle_uncertainty.errors import CommutatorDefectError
from subcycle_uncertainty.models import (
    DiscretizedMode,
    FrequencyGrid,
    GaussianModeParams,
    MomentSet,
)
from subcycle_uncertainty.modes.gaussian_mode import sample_gaussian_spectrum
from subcycle_uncertainty.utils.constants import COMMUTATOR_TOLERANCE

logger = logging.getLogger(__name__)


def discretize_mode(
    p: GaussianModeParams,
    grid: FrequencyGrid,
    tolerance: float = COMMUTATOR_TOLERANCE,
) -> DiscretizedMode:
    """Expand the Gaussian mode over the bins of a frequency grid.

    Args:
        p: Mode parameters
        grid: Frequency grid defining the bins
        tolerance: Largest accepted commutator defect

    Returns:
        DiscretizedMode with alpha_k = sqrt(w_k) f_g(omega_k) and
        beta_k = sqrt(w_k) f_g(-omega_k)

    Raises:
        CommutatorDefectError: If |sum(|alpha|^2 - |beta|^2) - 1| > tolerance
    """
    sqrt_w = np.sqrt(grid.weights)
    mode = DiscretizedMode(
        alpha=sqrt_w * sample_gaussian_spectrum(p, grid.nodes),
        beta=sqrt_w * sample_gaussian_spectrum(p, -grid.nodes),
        grid=grid,
    )
    logger.debug(f"Discretized mode over {grid.size} bins, defect {mode.defect:.3g}")
    if mode.defect > tolerance:
        raise CommutatorDefectError(
            f"commutator defect {mode.defect:.3g} exceeds tolerance {tolerance:.3g} "
            f"({grid.size} bins up to omega = {grid.omega_max:g})"
        )
    return mode


def wick_moments_discrete(mode: DiscretizedMode) -> MomentSet:
    """Vacuum moments of a discretized mode: n = sum|beta|^2, m = sum alpha beta."""
    n = float(np.sum(np.abs(mode.beta) ** 2))
    m = complex(np.sum(mode.alpha * mode.beta))
    return MomentSet.from_wick(n, m)


def compress_mode(mode: DiscretizedMode) -> DiscretizedMode:
    """Equivalent two-bin representation of a discretized mode.

    A passive unitary change of the bin basis leaves the multimode vacuum
    invariant. Choosing the first two new bins to span conj(alpha) and beta
    moves all coefficients onto them, so every vacuum moment of the mode is
    preserved exactly.

    Args:
        mode: Mode over any number of bins

    Returns:
        DiscretizedMode with two coefficients and no grid
    """
    alpha, beta = mode.alpha.astype(complex), mode.beta.astype(complex)
    target = np.conj(alpha)

    basis = []
    beta_norm = float(np.linalg.norm(beta))
    if beta_norm > 0:
        basis.append(beta / beta_norm)
    residual = target.copy()
    for e in basis:
        residual -= np.vdot(e, target) * e
    residual_norm = float(np.linalg.norm(residual))
    if residual_norm > 1e-15 * max(float(np.linalg.norm(target)), 1e-300):
        basis.append(residual / residual_norm)

    # alpha'_j = conj(<e_j, conj(alpha)>), beta'_j = <e_j, beta>
    new_alpha = np.zeros(2, dtype=complex)
    new_beta = np.zeros(2, dtype=complex)
    for j, e in enumerate(basis):
        new_alpha[j] = np.conj(np.vdot(e, target))
        new_beta[j] = np.vdot(e, beta)
    return DiscretizedMode(alpha=new_alpha, beta=new_beta)
