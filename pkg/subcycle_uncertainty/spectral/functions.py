"""Spectral algebra of wavepacket modes.

A mode operator is written as a_f = int f(omega) a_omega d omega over the whole
real line, with a_{-omega} = a_omega^dag. Spectra are stored as their samples
at +omega_k and -omega_k on a positive-frequency grid, so every integral over
the real line becomes two weighted sums over the same nodes.
"""

import logging
import math
from typing import Optional, Sequence, Tuple

import numpy as np

from subcycle_uncertainty.errors import ConfigError, GridMismatchError
from subcycle_uncertainty.models import ModeNorm, SpectralFunction
from subcycle_uncertainty.utils.constants import SELF_NORM_TOLERANCE

logger = logging.getLogger(__name__)


def _check_same_grid(f: SpectralFunction, g: SpectralFunction) -> None:
    if not f.grid.same_as(g.grid):
        raise GridMismatchError("spectral functions are sampled on different grids")


def signed_inner_product(f: SpectralFunction, g: SpectralFunction) -> complex:
    """Commutator [a_f, a_g^dag] of the modes defined by two spectra.

    Computes int_0^inf (f(w) g*(w) - f(-w) g*(-w)) dw.

    Args:
        f: First spectrum
        g: Second spectrum

    Returns:
        The signed overlap

    Raises:
        GridMismatchError: If the spectra use different grids
    """
    _check_same_grid(f, g)
    w = f.grid.weights
    positive = np.dot(w, f.pos * np.conj(g.pos))
    negative = np.dot(w, f.neg * np.conj(g.neg))
    return complex(positive - negative)


def symplectic_overlap(f: SpectralFunction, g: SpectralFunction) -> complex:
    """Commutator [a_f, a_g] = int_0^inf (f(w) g(-w) - f(-w) g(w)) dw.

    Vanishes for any two members of a set of independent modes.
    """
    _check_same_grid(f, g)
    w = f.grid.weights
    return complex(np.dot(w, f.pos * g.neg) - np.dot(w, f.neg * g.pos))


def mode_norm(f: SpectralFunction, tolerance: float = SELF_NORM_TOLERANCE) -> ModeNorm:
    """Canonical commutator [a_f, a_f^dag] of a single mode."""
    return ModeNorm(norm=signed_inner_product(f, f).real, tolerance_used=tolerance)


def gram_matrices(
    functions: Sequence[SpectralFunction],
) -> Tuple[np.ndarray, np.ndarray]:
    """Commutator matrices of a set of modes.

    Args:
        functions: Spectra of the modes, all on one grid

    Returns:
        Tuple of ([a_i, a_j^dag], [a_i, a_j]) matrices. An orthonormal mode set
        gives the identity and the zero matrix.
    """
    count = len(functions)
    if count == 0:
        raise ConfigError("at least one spectral function is required")
    hermitian = np.zeros((count, count), dtype=complex)
    symplectic = np.zeros((count, count), dtype=complex)
    for i, f in enumerate(functions):
        for j, g in enumerate(functions):
            hermitian[i, j] = signed_inner_product(f, g)
            symplectic[i, j] = symplectic_overlap(f, g)
    return hermitian, symplectic


def inverse_expansion(f: SpectralFunction) -> Tuple[SpectralFunction, SpectralFunction]:
    """Coefficients of a_f and a_f^dag in the expansion of a_omega.

    For a complete orthonormal set, a_omega = sum_i (f_i*(w) sign(w) a_i
    - f_i(-w) sign(w) a_i^dag). The two returned spectra hold the contribution
    of this one mode, sampled at +omega_k and -omega_k.

    Args:
        f: Spectrum of the mode

    Returns:
        Tuple of (annihilator coefficient, creator coefficient)
    """
    annihilator = SpectralFunction(grid=f.grid, pos=np.conj(f.pos), neg=-np.conj(f.neg))
    creator = SpectralFunction(grid=f.grid, pos=-f.neg, neg=f.pos.copy())
    return annihilator, creator


def _check_area(area: float) -> None:
    if not math.isfinite(area) or area <= 0:
        raise ConfigError(f"area must be positive and finite, got {area}")


def synthesize_profile(f: SpectralFunction, area: float, t_minus_x: float) -> complex:
    """Field mode function u(t - x) of a right-moving wavepacket mode.

    Uses u(w) = f*(w) sign(w) / sqrt(4 pi |w| A) and
    u(t-x) = int e^{-i w (t-x)} u(w) dw.

    Args:
        f: Spectrum of the mode
        area: Effective transverse area A
        t_minus_x: Retarded time

    Returns:
        Complex profile value

    Raises:
        ConfigError: If the area is not positive
    """
    _check_area(area)
    omega = f.grid.nodes
    scale = 1.0 / np.sqrt(4.0 * math.pi * omega * area)
    phase = np.exp(-1j * omega * t_minus_x)
    positive = np.conj(f.pos) * scale * phase
    negative = -np.conj(f.neg) * scale * np.conj(phase)
    return complex(np.dot(f.grid.weights, positive + negative))


def synthesize_momentum_profile(
    f: SpectralFunction, area: float, t_minus_x: float
) -> complex:
    """Conjugate-momentum mode function v(t - x).

    Uses v(w) = i f*(w) sqrt(|w| / (4 pi A)).
    """
    _check_area(area)
    omega = f.grid.nodes
    scale = 1j * np.sqrt(omega / (4.0 * math.pi * area))
    phase = np.exp(-1j * omega * t_minus_x)
    positive = np.conj(f.pos) * scale * phase
    negative = np.conj(f.neg) * scale * np.conj(phase)
    return complex(np.dot(f.grid.weights, positive + negative))


def frequency_components(
    f: SpectralFunction,
) -> Tuple[SpectralFunction, Optional[SpectralFunction]]:
    """Canonical positive- and negative-frequency parts of a mode.

    a_f = cosh(theta) a_plus + sinh(theta) a_minus^dag where
    a_plus has spectrum f(w)/cosh(theta) on w > 0 and a_minus has spectrum
    f*(-w)/sinh(theta) on w > 0.

    Args:
        f: Spectrum of the mode

    Returns:
        Tuple of (plus, minus) spectra; minus is None when f has no
        negative-frequency content
    """
    w = f.grid.weights
    zeros = np.zeros(f.grid.size, dtype=complex)

    cosh2 = float(np.dot(w, np.abs(f.pos) ** 2))
    if cosh2 <= 0:
        raise ConfigError("mode has no positive-frequency content")
    plus = SpectralFunction(grid=f.grid, pos=f.pos / math.sqrt(cosh2), neg=zeros)

    sinh2 = float(np.dot(w, np.abs(f.neg) ** 2))
    if sinh2 == 0.0:
        return plus, None
    minus = SpectralFunction(
        grid=f.grid, pos=np.conj(f.neg) / math.sqrt(sinh2), neg=zeros.copy()
    )
    return plus, minus
