"""Gaussian wavepacket mode and its vacuum statistics.

The mode spectrum is

    f_g(w) = (2 pi)^(-1/4) sign(w) sqrt(|w| / (w0 sigma))
             * exp(-i t0 (w - w0) - (w - w0)^2 / (4 sigma^2))

and all closed forms below are written in terms of r = w0 / sigma.
"""

import logging
import math
from typing import Tuple

import numpy as np
from scipy.special import erfcx

from subcycle_uncertainty.errors import CutoffError
from subcycle_uncertainty.models import (
    FrequencyGrid,
    FrequencySplit,
    GaussianModeParams,
    MomentSet,
    SpectralFunction,
)
from subcycle_uncertainty.spectral.functions import (
    frequency_components,
    signed_inner_product,
)
from subcycle_uncertainty.utils.constants import (
    FLAG_SUBCYCLE,
    FLAG_UNDERFLOW,
    INV_SQRT_2PI,
    MIN_CUTOFF_SIGMAS,
    SUBCYCLE_RATIO_THRESHOLD,
    UNDERFLOW_RATIO,
)

logger = logging.getLogger(__name__)

_PREFACTOR = (2.0 * math.pi) ** -0.25


def sample_gaussian_spectrum(p: GaussianModeParams, omega: np.ndarray) -> np.ndarray:
    """Evaluate f_g at arbitrary signed frequencies."""
    omega = np.asarray(omega, dtype=float)
    scale = np.sqrt(np.abs(omega) / (p.omega0 * p.sigma))
    amplitude = _PREFACTOR * np.sign(omega) * scale
    detuning = omega - p.omega0
    exponent = -1j * p.t0 * detuning - detuning**2 / (4.0 * p.sigma**2)
    return amplitude * np.exp(exponent)


def gaussian_spectrum(p: GaussianModeParams, grid: FrequencyGrid) -> SpectralFunction:
    """Sample the Gaussian mode spectrum at +omega_k and -omega_k.

    Args:
        p: Mode parameters
        grid: Frequency grid

    Returns:
        SpectralFunction of the mode

    Raises:
        CutoffError: If the grid ends below omega0 + 10 sigma
    """
    required = p.omega0 + MIN_CUTOFF_SIGMAS * p.sigma
    if grid.omega_max < required:
        raise CutoffError(
            f"grid cutoff {grid.omega_max} is below "
            f"omega0 + {MIN_CUTOFF_SIGMAS:g} sigma = {required}"
        )
    return SpectralFunction(
        grid=grid,
        pos=sample_gaussian_spectrum(p, grid.nodes),
        neg=sample_gaussian_spectrum(p, -grid.nodes),
    )


def is_subcycle(p: GaussianModeParams) -> bool:
    """Label modes whose envelope is short compared to a carrier period."""
    return p.r < SUBCYCLE_RATIO_THRESHOLD


def mode_flags(p: GaussianModeParams, split: FrequencySplit) -> Tuple[str, ...]:
    """Report labels attached to a mode in sweep output."""
    flags = []
    if is_subcycle(p):
        flags.append(FLAG_SUBCYCLE)
    if split.underflow:
        flags.append(FLAG_UNDERFLOW)
    return tuple(flags)


def split_closed_form(p: GaussianModeParams) -> FrequencySplit:
    """Closed-form frequency split of the Gaussian mode.

    sinh^2 = sigma/(sqrt(2 pi) w0) e^{-r^2/2} + (erf(r/sqrt 2) - 1)/2 is evaluated
    as e^{-r^2/2} (1/(sqrt(2 pi) r) - erfcx(r/sqrt 2)/2), which avoids the
    cancellation between the two terms; cosh^2 = 1 + sinh^2.

    Args:
        p: Mode parameters

    Returns:
        FrequencySplit; ``underflow`` is set when sinh^2 is not representable
    """
    r = p.r
    underflow = False
    if r > UNDERFLOW_RATIO:
        sinh2 = 0.0
        underflow = True
    else:
        scaled_tail = 0.5 * float(erfcx(r / math.sqrt(2.0)))
        sinh2 = math.exp(-0.5 * r * r) * (INV_SQRT_2PI / r - scaled_tail)
        if sinh2 <= 0.0:
            sinh2 = 0.0
            underflow = True
    if underflow:
        logger.warning(f"sinh^2 underflows at r = {r:g}; reporting 0 (optical regime)")

    cosh2 = 1.0 + sinh2
    theta_g = math.asinh(math.sqrt(sinh2))

    if sinh2 == 0.0:
        overlap = 0j
    else:
        log_magnitude = (
            math.log(INV_SQRT_2PI / r)
            - 0.5 * r * r
            - 0.5 * math.log(sinh2)
            - 0.5 * math.log(cosh2)
        )
        phase = 2.0 * p.t0 * p.omega0
        overlap = -math.exp(log_magnitude) * complex(math.cos(phase), math.sin(phase))

    return FrequencySplit(
        theta_g=theta_g,
        cosh2=cosh2,
        sinh2=sinh2,
        overlap_c=overlap,
        underflow=underflow,
    )


def split_from_spectrum(f: SpectralFunction) -> FrequencySplit:
    """Frequency split of an arbitrary mode spectrum by quadrature."""
    w = f.grid.weights
    cosh2 = float(np.dot(w, np.abs(f.pos) ** 2))
    sinh2 = float(np.dot(w, np.abs(f.neg) ** 2))
    plus, minus = frequency_components(f)
    overlap = 0j if minus is None else signed_inner_product(plus, minus)
    return FrequencySplit(
        theta_g=math.asinh(math.sqrt(sinh2)),
        cosh2=cosh2,
        sinh2=sinh2,
        overlap_c=overlap,
    )


def split_quadrature(p: GaussianModeParams, grid: FrequencyGrid) -> FrequencySplit:
    """Frequency split of the Gaussian mode integrated on a grid.

    Args:
        p: Mode parameters
        grid: Frequency grid reaching at least omega0 + 10 sigma

    Returns:
        FrequencySplit from quadrature
    """
    split = split_from_spectrum(gaussian_spectrum(p, grid))
    logger.debug(
        f"Quadrature split at r = {p.r:g}: cosh2 = {split.cosh2:.12g}, "
        f"sinh2 = {split.sinh2:.12g}"
    )
    return split


def vacuum_moments(split: FrequencySplit) -> MomentSet:
    """Vacuum moments of the mode operator from its frequency split.

    n = sinh^2, m = sinh cosh c and the second moments follow from Wick's rule.
    """
    m = math.sqrt(split.sinh2 * split.cosh2) * split.overlap_c
    return MomentSet.from_wick(split.sinh2, m)


def second_moment_closed_form(p: GaussianModeParams) -> float:
    """<n^2> = sinh^4 + sinh^2 cosh^2 + sigma^2/(2 pi w0^2) e^{-r^2}."""
    split = split_closed_form(p)
    r = p.r
    return (
        split.sinh2**2
        + split.sinh2 * split.cosh2
        + math.exp(-r * r) / (2.0 * math.pi * r * r)
    )
