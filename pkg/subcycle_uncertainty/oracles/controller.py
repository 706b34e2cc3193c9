"""Controller for comparing exact detector dynamics with the beamsplitter picture."""

import logging
import time
from dataclasses import replace
from typing import List, Optional, Sequence

from subcycle_uncertainty.detector.udw import beamsplitter_output, magnus_validity
from subcycle_uncertainty.errors import ConfigError
from subcycle_uncertainty.models import (
    DetectorParams,
    DynamicsSettings,
    FrequencyGrid,
    GaussianModeParams,
    MagnusRow,
    MomentSet,
)
from subcycle_uncertainty.oracles.discrete import discretize_mode, wick_moments_discrete
from subcycle_uncertainty.oracles.symplectic import (
    converge_detector_response,
    detector_response,
)
from subcycle_uncertainty.spectral.quadrature import grid_for_mode
from subcycle_uncertainty.utils.constants import (
    BREAKDOWN_RELATIVE_DEVIATION,
    COMMUTATOR_TOLERANCE,
    DEFAULT_WINDOW_SIGMAS,
    FLAG_BEAMSPLITTER_BREAKDOWN,
    FLAG_NOT_DECREASING,
)
from subcycle_uncertainty.utils.time_utils import format_elapsed, report_progress

logger = logging.getLogger(__name__)


def _row(
    d: DetectorParams,
    p: GaussianModeParams,
    grid: FrequencyGrid,
    exact: MomentSet,
    steps: int,
    tolerance: float,
) -> MagnusRow:
    mode_moments = wick_moments_discrete(discretize_mode(p, grid, tolerance))
    predicted = beamsplitter_output(d.theta_u, mode_moments)
    row = MagnusRow(
        sigma_ratio=d.sigma_u / d.omega_u,
        steps=steps,
        n_exact=exact.n,
        n_predicted=predicted.n,
        var_exact=exact.var,
        var_predicted=predicted.var,
    )
    if row.relative_deviation > BREAKDOWN_RELATIVE_DEVIATION:
        row = replace(row, flags=(FLAG_BEAMSPLITTER_BREAKDOWN,))
    return row


def magnus_comparison(
    d: DetectorParams,
    p: GaussianModeParams,
    grid: FrequencyGrid,
    steps: int,
    scheme: str = "cf4",
    window_sigmas: float = DEFAULT_WINDOW_SIGMAS,
    tolerance: float = COMMUTATOR_TOLERANCE,
) -> MagnusRow:
    """Exact detector response at a fixed step count against the beamsplitter.

    The prediction applies the beamsplitter to the mode discretized on the same
    grid, so both sides see identical field bins.

    Args:
        d: Detector parameters
        p: Field mode the detector is compared against
        grid: Field bins
        steps: Number of time steps
        scheme: Step scheme
        window_sigmas: Half-width of the interaction window in units of 1/sigma_u
        tolerance: Commutator tolerance of the discretized mode

    Returns:
        MagnusRow with exact and predicted mean number and variance

    Raises:
        ConfigError: If the detector is not tuned to the mode
    """
    if not d.is_mode_matched(p):
        raise ConfigError(
            f"detector (omega_u={d.omega_u:g}, sigma_u={d.sigma_u:g}, "
            f"t_u={d.t_u:g}) is not tuned to the mode (omega0={p.omega0:g}, "
            f"sigma={p.sigma:g}, t0={p.t0:g})"
        )
    exact = detector_response(d, grid, steps, scheme, window_sigmas)
    return _row(d, p, grid, exact, steps, tolerance)


def deviations_decreasing(rows: Sequence[MagnusRow]) -> bool:
    """Check that the deviation strictly decreases along the rows."""
    return all(b.deviation < a.deviation for a, b in zip(rows, rows[1:]))


def flag_ladder(rows: Sequence[MagnusRow]) -> List[MagnusRow]:
    """Mark rows whose deviation did not shrink against the previous ratio."""
    flagged = list(rows[:1])
    for previous, row in zip(rows, rows[1:]):
        if row.deviation >= previous.deviation:
            row = replace(row, flags=row.flags + (FLAG_NOT_DECREASING,))
        flagged.append(row)
    return flagged


def magnus_ladder(
    settings: Optional[DynamicsSettings] = None, area: float = 1.0
) -> List[MagnusRow]:
    """Run the mode-matched comparison along the sigma_u/omega_u ladder.

    Each ratio fixes r = omega_u/sigma_u of a mode-matched detector. The step
    count is doubled until the detector moments settle.

    Args:
        settings: Dynamics settings (default: DynamicsSettings())
        area: Effective transverse area

    Returns:
        List of MagnusRow in ladder order, flagged where the relative deviation
        exceeds one or fails to shrink along the ladder
    """
    settings = settings or DynamicsSettings()
    start_time = time.time()

    total = len(settings.ratios)
    logger.info(
        f"Comparing exact dynamics with the beamsplitter for {total} ratios "
        f"(scheme {settings.scheme}, {settings.panels * settings.order} field bins)"
    )

    rows: List[MagnusRow] = []
    for i, ratio in enumerate(settings.ratios, 1):
        report_progress(logger, i, total, "ratios")
        mode = GaussianModeParams.from_ratio(1.0 / ratio, area=area)
        detector = DetectorParams.mode_matched(mode, settings.theta_u)
        magnus_validity(detector)
        grid = grid_for_mode(
            mode, settings.panels, settings.order, settings.cutoff_sigmas
        )

        exact, steps = converge_detector_response(
            detector,
            grid,
            initial_steps=settings.initial_steps,
            max_steps=settings.max_steps,
            tolerance=settings.step_tolerance,
            scheme=settings.scheme,
            window_sigmas=settings.window_sigmas,
        )
        row = _row(detector, mode, grid, exact, steps, COMMUTATOR_TOLERANCE)
        rows.append(row)
        logger.info(
            f"sigma_u/omega_u = {ratio:g}: n_exact = {row.n_exact:.10g}, "
            f"n_predicted = {row.n_predicted:.10g}, "
            f"relative deviation = {row.relative_deviation:.3g} ({steps} steps)"
        )

    if not deviations_decreasing(rows):
        logger.warning("Deviation from the beamsplitter is not strictly decreasing")
    rows = flag_ladder(rows)

    elapsed = format_elapsed(time.time() - start_time)
    logger.info(f"Dynamics comparison completed in {elapsed}")
    print(f"Dynamics comparison completed in {elapsed}")
    return rows
