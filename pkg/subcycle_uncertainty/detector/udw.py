"""Harmonic-oscillator detector with Gaussian switching.

The detector couples to the field momentum through
H_I(t) = A lambda chi(t) Q(t) pi(t, 0) with chi(t) = exp(-sigma_u^2 (t - t_u)^2).
In the rapid-switching regime the interaction acts as a beamsplitter
u' = cos(theta_u) u + sin(theta_u) a_g between the detector and the mode
matched to the switching.
"""

import logging
import math
from typing import Union

import numpy as np

from subcycle_uncertainty.models import (
    DetectorParams,
    GaussianModeParams,
    MagnusValidity,
    MomentSet,
)
from subcycle_uncertainty.utils.constants import (
    MAGNUS_WARN_RATIO,
    QUARTER_ROOT_HALF_PI,
)

logger = logging.getLogger(__name__)


def calibrate_coupling(theta_u: float, p: GaussianModeParams) -> float:
    """Peak coupling that realizes the beamsplitter angle theta_u for a mode.

    lambda = -2 theta_u sqrt(sigma / omega0) (pi/2)^(-1/4); at theta_u = pi/2
    this is -(2 pi^3)^(1/4) sqrt(sigma / omega0).
    """
    return -2.0 * theta_u * math.sqrt(p.sigma / p.omega0) / QUARTER_ROOT_HALF_PI


def coupling_profile(
    d: DetectorParams, t: Union[float, np.ndarray]
) -> Union[float, np.ndarray]:
    """Instantaneous coupling strength lambda chi(t)."""
    if isinstance(t, np.ndarray):
        return d.coupling * np.exp(-((d.sigma_u * (t - d.t_u)) ** 2))
    return d.coupling * math.exp(-((d.sigma_u * (t - d.t_u)) ** 2))


def coupling_weight(d: DetectorParams) -> float:
    """Time integral of lambda chi(t), the weight of the delta-switching limit."""
    return d.coupling * math.sqrt(math.pi) / d.sigma_u


def beamsplitter_output(theta_u: float, mode: MomentSet) -> MomentSet:
    """Detector moments after the beamsplitter, starting from the ground state.

    Only the sin(theta_u) a_g part of u' has nonzero vacuum moments, so the
    mean number and anomalous moment scale with sin^2(theta_u) and the second
    moments follow from Wick's rule.

    Args:
        theta_u: Beamsplitter angle
        mode: Vacuum moments of the matched field mode

    Returns:
        MomentSet of the detector after the interaction
    """
    weight = math.sin(theta_u) ** 2
    return MomentSet.from_wick(weight * mode.n, weight * mode.m)


def classify_magnus_ratio(ratio: float) -> MagnusValidity:
    """Classify omega_u / sigma_u against the rapid-switching threshold."""
    if ratio == 0.0:
        return MagnusValidity(ratio=0.0, status="pass", note="exact delta limit")
    if ratio < MAGNUS_WARN_RATIO:
        return MagnusValidity(ratio=ratio, status="pass")
    return MagnusValidity(
        ratio=ratio,
        status="warn",
        note=f"omega_u/sigma_u = {ratio:g} is not small compared to 1",
    )


def magnus_validity(d: DetectorParams) -> MagnusValidity:
    """Advisory check that the switching is fast compared to the detector gap."""
    validity = classify_magnus_ratio(d.omega_u / d.sigma_u)
    if validity.status == "warn":
        logger.warning(f"Beamsplitter picture may be inaccurate: {validity.note}")
    return validity
