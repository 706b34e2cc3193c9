"""Time-energy uncertainty product of the switched detector."""

import logging
import math
from typing import Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import Polynomial

from subcycle_uncertainty.detector.udw import beamsplitter_output
from subcycle_uncertainty.errors import ConfigError, ExtrapolationError
from subcycle_uncertainty.models import (
    GaussianModeParams,
    LimitEstimate,
    LimitSettings,
    UncertaintyReport,
)
from subcycle_uncertainty.modes.gaussian_mode import (
    mode_flags,
    split_closed_form,
    vacuum_moments,
)
from subcycle_uncertainty.utils.constants import DT_CONVENTIONS

logger = logging.getLogger(__name__)


def interaction_duration(sigma: float, convention: str = "stddev") -> float:
    """Effective duration of the Gaussian switching.

    Args:
        sigma: Switching bandwidth
        convention: "stddev" for the standard deviation of chi, 1/(sqrt(2) sigma),
            or "fwhm" for its full width at half maximum, 2 sqrt(ln 2)/sigma

    Returns:
        Duration in units of 1/sigma

    Raises:
        ConfigError: For an unknown convention
    """
    if convention == "stddev":
        return 1.0 / (math.sqrt(2.0) * sigma)
    if convention == "fwhm":
        return 2.0 * math.sqrt(math.log(2.0)) / sigma
    raise ConfigError(
        f"unknown dt convention {convention!r}, expected one of {DT_CONVENTIONS}"
    )


def uncertainty_product(
    p: GaussianModeParams,
    dt_convention: str = "stddev",
    theta_u: float = math.pi / 2,
) -> UncertaintyReport:
    """Energy spread of the detector times the interaction duration.

    The detector is mode-matched to ``p``. At theta_u = pi/2 the detector
    inherits the full number variance of the mode; other angles scale the
    moments by sin^2(theta_u).

    Args:
        p: Mode parameters
        dt_convention: Duration convention, see ``interaction_duration``
        theta_u: Beamsplitter angle

    Returns:
        UncertaintyReport with delta_E in units of hbar sigma and delta_t in 1/sigma
    """
    split = split_closed_form(p)
    field_moments = vacuum_moments(split)
    detector_moments = beamsplitter_output(theta_u, field_moments)

    delta_E = p.omega0 * math.sqrt(detector_moments.var)
    delta_t = interaction_duration(p.sigma, dt_convention)

    return UncertaintyReport(
        r=p.r,
        delta_E=delta_E,
        delta_t=delta_t,
        product=delta_E * delta_t,
        dt_convention=dt_convention,
        split=split,
        field_moments=field_moments,
        detector_moments=detector_moments,
        flags=mode_flags(p, split) + (f"dt={dt_convention}",),
    )


def product_decomposition(r: float) -> Tuple[float, float]:
    """The two summands of the squared product at theta_u = pi/2, stddev duration.

    (dE dt)^2 = (r^2/2) sinh^2 cosh^2 + e^{-r^2} / (4 pi).
    """
    split = split_closed_form(GaussianModeParams.from_ratio(r))
    return 0.5 * r * r * split.sinh2 * split.cosh2, math.exp(-r * r) / (4.0 * math.pi)


def _extrapolate_to_zero(x: np.ndarray, y: np.ndarray) -> float:
    if x.size == 1:
        return float(y[0])
    fit = Polynomial.fit(x, y, deg=x.size - 1)
    return float(fit(0.0))


def subcycle_limit(
    settings: Optional[LimitSettings] = None,
    ladder: Sequence[float] = (),
) -> LimitEstimate:
    """Extrapolate the uncertainty product to r = 0.

    The product is evaluated at each ratio of the ladder and interpolated by a
    polynomial in r^2 which is evaluated at zero. The residual is the change
    of the estimate when the largest ratio is left out.

    Args:
        settings: Ladder and tolerance
        ladder: Optional ratios overriding ``settings.ladder``

    Returns:
        LimitEstimate

    Raises:
        ConfigError: If the ladder is empty, non-positive or contains duplicates
        ExtrapolationError: If the residual exceeds the tolerance
    """
    settings = settings or LimitSettings()
    ratios = np.asarray(list(ladder) or settings.ladder, dtype=float)
    if ratios.size == 0:
        raise ConfigError("extrapolation ladder is empty")
    if np.any(ratios <= 0) or not np.all(np.isfinite(ratios)):
        raise ConfigError("extrapolation ladder must contain positive ratios")
    if np.unique(ratios).size != ratios.size:
        raise ConfigError("extrapolation ladder contains duplicate ratios")

    ratios = np.sort(ratios)[::-1]
    products = np.array(
        [uncertainty_product(GaussianModeParams.from_ratio(r)).product for r in ratios]
    )
    x = ratios**2

    value = _extrapolate_to_zero(x, products)
    if ratios.size == 1:
        residual = 0.0
    else:
        residual = abs(value - _extrapolate_to_zero(x[1:], products[1:]))

    logger.debug(f"Limit estimate {value:.12g} with residual {residual:.3g}")
    if residual > settings.tolerance:
        raise ExtrapolationError(
            f"extrapolation residual {residual:.3g} exceeds tolerance "
            f"{settings.tolerance:.3g}"
        )

    return LimitEstimate(
        value=value,
        residual=residual,
        ladder=tuple(float(r) for r in ratios),
        products=tuple(float(v) for v in products),
        extrapolated=ratios.size > 1,
    )
