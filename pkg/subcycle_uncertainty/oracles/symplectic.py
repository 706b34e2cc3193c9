"""Exact time-ordered evolution of the detector and the discretized field.

The interaction H(t) = A lambda chi(t) Q(t) pi(t, 0) is bilinear in the
quadratures xi = (q_u, p_u, q_1, p_1, ...), so it generates a linear flow
d xi / dt = Omega M(t) xi with M = s (c d^T + d c^T), where

    s(t)   = A lambda chi(t)
    c(t)   = (cos w_u t, sin w_u t) / sqrt(A)                   on the detector
    d_k(t) = sqrt(w_k omega_k / (2 pi A)) (-sin omega_k t, cos omega_k t)  on bin k

Time ordering is realized by composing one exponential per step, later steps
on the left. Each exponential has rank at most 2J for J time samples, which
keeps every step O(n) for the detector rows.
"""

import logging
import math
from typing import Iterator, Tuple

import numpy as np
from scipy.linalg import expm

from subcycle_uncertainty.detector.udw import coupling_profile
from subcycle_uncertainty.errors import (
    ConfigError,
    CutoffError,
    StepConvergenceError,
    SymplecticViolationError,
)
from subcycle_uncertainty.models import (
    DetectorParams,
    FrequencyGrid,
    GaussianModeParams,
    MomentSet,
)
from subcycle_uncertainty.oracles.gaussian_state import (
    GaussianState,
    apply_symplectic_form,
    moments_from_covariance,
    symplectic_defect,
)
from subcycle_uncertainty.utils.constants import (
    DEFAULT_WINDOW_SIGMAS,
    MIN_CUTOFF_SIGMAS,
    STEP_SCHEMES,
    SYMPLECTIC_TOLERANCE,
)

logger = logging.getLogger(__name__)

# Fourth-order commutator-free scheme with two Gauss-Legendre samples per step
_CF4_OFFSET = math.sqrt(3.0) / 6.0
_CF4_ALPHA1 = (3.0 - 2.0 * math.sqrt(3.0)) / 12.0
_CF4_ALPHA2 = (3.0 + 2.0 * math.sqrt(3.0)) / 12.0


def time_window(d: DetectorParams, window_sigmas: float) -> Tuple[float, float]:
    """Interaction window t_u +/- window_sigmas / sigma_u."""
    half = window_sigmas / d.sigma_u
    return d.t_u - half, d.t_u + half


def exponential_schedule(
    d: DetectorParams,
    steps: int,
    scheme: str = "cf4",
    window_sigmas: float = DEFAULT_WINDOW_SIGMAS,
) -> Tuple[np.ndarray, np.ndarray]:
    """Sample times and weights of the step exponentials in time order.

    Args:
        d: Detector parameters
        steps: Number of time steps across the window
        scheme: "midpoint" (one sample per step) or "cf4" (two exponentials
            with two samples each per step)
        window_sigmas: Half-width of the window in units of 1/sigma_u

    Returns:
        Tuple of (times, weights) arrays of shape (exponentials, samples);
        the weights include the step size

    Raises:
        ConfigError: For a non-positive step count or an unknown scheme
    """
    if steps < 1:
        raise ConfigError(f"steps must be at least 1, got {steps}")
    if scheme not in STEP_SCHEMES:
        raise ConfigError(f"unknown scheme {scheme!r}, expected one of {STEP_SCHEMES}")

    start, stop = time_window(d, window_sigmas)
    h = (stop - start) / steps
    left = start + h * np.arange(steps)

    if scheme == "midpoint":
        return (left + 0.5 * h)[:, None], np.full((steps, 1), h)

    samples = np.column_stack(
        [left + (0.5 - _CF4_OFFSET) * h, left + (0.5 + _CF4_OFFSET) * h]
    )
    times = np.repeat(samples, 2, axis=0)
    weights = np.empty_like(times)
    weights[0::2] = (_CF4_ALPHA2 * h, _CF4_ALPHA1 * h)
    weights[1::2] = (_CF4_ALPHA1 * h, _CF4_ALPHA2 * h)
    return times, weights


def coupling_vectors(
    d: DetectorParams, grid: FrequencyGrid, t: float
) -> Tuple[np.ndarray, np.ndarray, float]:
    """Detector vector c, field vector d and strength s of H(t) = s (c.xi)(d.xi)."""
    size = 2 * (grid.size + 1)
    c = np.zeros(size)
    c[0] = math.cos(d.omega_u * t) / math.sqrt(d.area)
    c[1] = math.sin(d.omega_u * t) / math.sqrt(d.area)

    amplitude = np.sqrt(grid.weights * grid.nodes / (2.0 * math.pi * d.area))
    field = np.zeros(size)
    field[2::2] = -amplitude * np.sin(grid.nodes * t)
    field[3::2] = amplitude * np.cos(grid.nodes * t)

    return c, field, d.area * float(coupling_profile(d, t))


def _phi(X: np.ndarray) -> np.ndarray:
    # (e^X - I) X^{-1}, read off the exponential of [[X, I], [0, 0]]
    k = X.shape[0]
    if not np.any(X):
        return np.eye(k)
    block = np.zeros((2 * k, 2 * k))
    block[:k, :k] = X
    block[:k, k:] = np.eye(k)
    return expm(block)[:k, k:]


def step_factors(
    d: DetectorParams,
    grid: FrequencyGrid,
    steps: int,
    scheme: str = "cf4",
    window_sigmas: float = DEFAULT_WINDOW_SIGMAS,
    reverse: bool = False,
) -> Iterator[Tuple[np.ndarray, np.ndarray, np.ndarray]]:
    """Yield (U, Phi, V) with exp(G) = I + U Phi V for each step, in time order.

    With ``reverse`` the exponentials are produced latest first.
    """
    times, weights = exponential_schedule(d, steps, scheme, window_sigmas)
    if reverse:
        times, weights = times[::-1], weights[::-1]
    for sample_times, sample_weights in zip(times, weights):
        columns = []
        rows = []
        for t, weight in zip(sample_times, sample_weights):
            c, field, strength = coupling_vectors(d, grid, float(t))
            columns.extend([c, field])
            rows.extend([weight * strength * field, weight * strength * c])
        U = apply_symplectic_form(np.column_stack(columns))
        V = np.vstack(rows)
        yield U, _phi(V @ U), V


def propagate_map(
    d: DetectorParams,
    grid: FrequencyGrid,
    steps: int,
    scheme: str = "cf4",
    window_sigmas: float = DEFAULT_WINDOW_SIGMAS,
) -> np.ndarray:
    """Accumulated phase-space map S with xi_out = S xi_in."""
    S = np.eye(2 * (grid.size + 1))
    for U, Phi, V in step_factors(d, grid, steps, scheme, window_sigmas):
        S = S + U @ (Phi @ (V @ S))
    return S


def detector_rows(
    d: DetectorParams,
    grid: FrequencyGrid,
    steps: int,
    scheme: str = "cf4",
    window_sigmas: float = DEFAULT_WINDOW_SIGMAS,
) -> np.ndarray:
    """The two rows of S belonging to the detector quadratures."""
    R = np.zeros((2, 2 * (grid.size + 1)))
    R[0, 0] = R[1, 1] = 1.0
    for U, Phi, V in step_factors(
        d, grid, steps, scheme, window_sigmas, reverse=True
    ):
        R = R + ((R @ U) @ Phi) @ V
    return R


def detector_response(
    d: DetectorParams,
    grid: FrequencyGrid,
    steps: int,
    scheme: str = "cf4",
    window_sigmas: float = DEFAULT_WINDOW_SIGMAS,
) -> MomentSet:
    """Detector moments after the interaction, starting from the joint vacuum."""
    R = detector_rows(d, grid, steps, scheme, window_sigmas)
    return moments_from_covariance(0.5 * R @ R.T)


def converge_detector_response(
    d: DetectorParams,
    grid: FrequencyGrid,
    initial_steps: int,
    max_steps: int,
    tolerance: float,
    scheme: str = "cf4",
    window_sigmas: float = DEFAULT_WINDOW_SIGMAS,
) -> Tuple[MomentSet, int]:
    """Double the step count until the detector moments settle.

    The change between successive runs is measured relative to
    max(1, |n|, |n2|).

    Returns:
        Tuple of (converged moments, step count)

    Raises:
        StepConvergenceError: If max_steps is reached first
    """
    steps = initial_steps
    previous = detector_response(d, grid, steps, scheme, window_sigmas)
    while 2 * steps <= max_steps:
        steps *= 2
        current = detector_response(d, grid, steps, scheme, window_sigmas)
        change = current.max_difference(previous)
        scale = max(1.0, abs(current.n), abs(current.n2))
        logger.debug(f"{steps} steps: n = {current.n:.12g}, change {change:.3g}")
        if change <= tolerance * scale:
            return current, steps
        previous = current

    raise StepConvergenceError(
        f"detector moments did not settle within {max_steps} steps "
        f"(tolerance {tolerance:.3g})"
    )


def evolve_symplectic(
    d: DetectorParams,
    p: GaussianModeParams,
    grid: FrequencyGrid,
    steps: int,
    scheme: str = "cf4",
    window_sigmas: float = DEFAULT_WINDOW_SIGMAS,
    tolerance: float = SYMPLECTIC_TOLERANCE,
) -> GaussianState:
    """Evolve the joint vacuum of detector and field bins through the interaction.

    Args:
        d: Detector parameters
        p: Mode whose spectral support the grid must cover
        grid: Field bins
        steps: Number of time steps
        scheme: Step scheme, see ``exponential_schedule``
        window_sigmas: Half-width of the window in units of 1/sigma_u
        tolerance: Largest accepted entry of S Omega S^T - Omega

    Returns:
        Final GaussianState; mode 0 is the detector

    Raises:
        CutoffError: If the grid ends below omega0 + 10 sigma
        SymplecticViolationError: If the accumulated map is not symplectic
    """
    if grid.omega_max < p.omega0 + MIN_CUTOFF_SIGMAS * p.sigma:
        raise CutoffError(
            f"grid cutoff {grid.omega_max} does not cover the mode at r = {p.r:g}"
        )
    S = propagate_map(d, grid, steps, scheme, window_sigmas)
    defect = symplectic_defect(S)
    logger.debug(f"Symplectic defect after {steps} steps: {defect:.3g}")
    if defect > tolerance:
        raise SymplecticViolationError(
            f"symplectic defect {defect:.3g} exceeds tolerance {tolerance:.3g}"
        )
    return GaussianState.vacuum(grid.size + 1).transformed(S)
