"""Controller module for sweeps, convergence studies and validation runs."""

import cmath
import logging
import math
import time
from typing import Callable, List, Optional

from subcycle_uncertainty.detector.udw import calibrate_coupling
from subcycle_uncertainty.detector.uncertainty import (
    product_decomposition,
    subcycle_limit,
    uncertainty_product,
)
from subcycle_uncertainty.models import (
    ConvergenceReport,
    ConvergenceRow,
    DetectorParams,
    FrequencyGrid,
    GaussianModeParams,
    LimitEstimate,
    MagnusRow,
    SweepConfig,
    SweepRow,
    ValidationCheck,
)
from subcycle_uncertainty.modes.gaussian_mode import (
    gaussian_spectrum,
    split_closed_form,
    split_quadrature,
    vacuum_moments,
)
from subcycle_uncertainty.oracles.controller import magnus_ladder
from subcycle_uncertainty.oracles.discrete import (
    compress_mode,
    discretize_mode,
    wick_moments_discrete,
)
from subcycle_uncertainty.oracles.fock import fock_brute_force
from subcycle_uncertainty.oracles.symplectic import detector_response, evolve_symplectic
from subcycle_uncertainty.spectral.functions import mode_norm
from subcycle_uncertainty.spectral.quadrature import build_grid, grid_for_mode
from subcycle_uncertainty.utils.constants import SUBCYCLE_LIMIT
from subcycle_uncertainty.utils.time_utils import format_elapsed, report_progress

logger = logging.getLogger(__name__)

VALIDATION_RATIOS = (0.01, 0.1, 1.0, 5.0, 10.0)


def _mode(cfg: SweepConfig, r: float) -> GaussianModeParams:
    # Internal units: sigma = 1, so times scale by the user sigma
    return GaussianModeParams.from_ratio(r, t0=cfg.t0 * cfg.sigma, area=cfg.area)


def sweep_row(cfg: SweepConfig, r: float) -> SweepRow:
    """Evaluate one ratio of the sweep in user units.

    Args:
        cfg: Sweep configuration
        r: Ratio omega0/sigma

    Returns:
        SweepRow with delta_E in units of hbar*sigma and delta_t in 1/sigma
    """
    report = uncertainty_product(_mode(cfg, r), cfg.dt_convention, cfg.theta_u)
    return SweepRow(
        r=r,
        theta_g=report.split.theta_g,
        n_g=report.field_moments.n,
        abs_m=report.field_moments.abs_m,
        n2=report.field_moments.n2,
        delta_E=report.delta_E * cfg.hbar * cfg.sigma,
        delta_t=report.delta_t / cfg.sigma,
        product=report.product * cfg.hbar,
        flags=report.flags,
    )


def run_sweep(cfg: SweepConfig) -> List[SweepRow]:
    """Evaluate the uncertainty product for every configured ratio.

    Args:
        cfg: Sweep configuration

    Returns:
        One SweepRow per ratio, in configuration order
    """
    start_time = time.time()
    total = len(cfg.r_values)
    logger.info(f"Sweeping {total} ratios (dt convention {cfg.dt_convention})")

    rows: List[SweepRow] = []
    for i, r in enumerate(cfg.r_values, 1):
        report_progress(logger, i, total, "ratios")
        rows.append(sweep_row(cfg, r))

    elapsed = format_elapsed(time.time() - start_time)
    logger.info(f"Sweep completed in {elapsed}")
    print(f"Sweep completed in {elapsed}")
    return rows


def run_limit(cfg: SweepConfig) -> LimitEstimate:
    """Extrapolate the product to r = 0, expressed in units of hbar."""
    estimate = subcycle_limit(cfg.limit)
    logger.info(
        f"Deep-subcycle product {estimate.value * cfg.hbar:.10f} "
        f"(residual {estimate.residual:.3g}, target {SUBCYCLE_LIMIT * cfg.hbar:.10f})"
    )
    return LimitEstimate(
        value=estimate.value * cfg.hbar,
        residual=estimate.residual * cfg.hbar,
        ladder=estimate.ladder,
        products=tuple(p * cfg.hbar for p in estimate.products),
        extrapolated=estimate.extrapolated,
    )


def run_dynamics(cfg: SweepConfig) -> List[MagnusRow]:
    """Compare exact detector dynamics with the beamsplitter prediction."""
    return magnus_ladder(cfg.dynamics, area=cfg.area)


def run_convergence(cfg: SweepConfig) -> ConvergenceReport:
    """Tabulate errors against refinement level.

    Studies:
        quadrature: cosh^2 from composite rules against the closed form
        self_norm: signed self-norm of the spectrum against 1
        discretization: sum |beta_k|^2 over K bins against sinh^2
        steps: detector mean number against the finest step count
        magnus: the dynamics ladder, when enabled

    Args:
        cfg: Configuration; the ``convergence`` section holds the ladders

    Returns:
        ConvergenceReport
    """
    start_time = time.time()
    settings = cfg.convergence
    mode = GaussianModeParams.from_ratio(settings.r)
    closed = split_closed_form(mode)
    report = ConvergenceReport()

    logger.info(
        f"Quadrature ladder at r = {settings.r:g}: {settings.quadrature_panels}"
    )
    for panels in settings.quadrature_panels:
        grid = grid_for_mode(
            mode, panels, settings.quadrature_order, cfg.grid.cutoff_sigmas
        )
        split = split_quadrature(mode, grid)
        norm = mode_norm(gaussian_spectrum(mode, grid)).norm
        error = abs(split.cosh2 - closed.cosh2)
        report.rows.append(ConvergenceRow("quadrature", panels, split.cosh2, error))
        report.rows.append(ConvergenceRow("self_norm", panels, norm, abs(norm - 1.0)))

    logger.info(f"Discretization ladder: {settings.k_panels} panels")
    for panels in settings.k_panels:
        grid = grid_for_mode(mode, panels, settings.k_order, cfg.grid.cutoff_sigmas)
        # Coarse ladders are studied, not rejected
        discrete = wick_moments_discrete(
            discretize_mode(mode, grid, tolerance=math.inf)
        )
        error = abs(discrete.n - closed.sinh2)
        report.rows.append(
            ConvergenceRow("discretization", grid.size, discrete.n, error)
        )

    dynamics = cfg.dynamics
    step_mode = GaussianModeParams.from_ratio(1.0 / settings.step_ratio, area=cfg.area)
    detector = DetectorParams.mode_matched(step_mode, dynamics.theta_u)
    step_grid = grid_for_mode(
        step_mode, dynamics.panels, dynamics.order, dynamics.cutoff_sigmas
    )
    logger.info(f"Step ladder: {settings.step_ladder}")
    values = [
        detector_response(
            detector, step_grid, steps, dynamics.scheme, dynamics.window_sigmas
        ).n
        for steps in settings.step_ladder
    ]
    for steps, value in zip(settings.step_ladder, values):
        error = abs(value - values[-1])
        report.rows.append(ConvergenceRow("steps", steps, value, error))

    if settings.include_magnus:
        report.magnus = magnus_ladder(dynamics, area=cfg.area)

    elapsed = format_elapsed(time.time() - start_time)
    logger.info(f"Convergence study completed in {elapsed}")
    print(f"Convergence study completed in {elapsed}")
    return report


def _production_grid(cfg: SweepConfig, mode: GaussianModeParams) -> FrequencyGrid:
    return grid_for_mode(mode, cfg.grid.panels, cfg.grid.order, cfg.grid.cutoff_sigmas)


def _check(name: str, value: float, tolerance: float) -> ValidationCheck:
    passed = math.isfinite(value) and value <= tolerance
    level = logging.INFO if passed else logging.ERROR
    logger.log(level, f"{name}: {value:.3g} (tolerance {tolerance:.1g})")
    return ValidationCheck(name=name, value=value, tolerance=tolerance, passed=passed)


def _closed_form_checks(cfg: SweepConfig) -> List[ValidationCheck]:
    checks = []
    for r in VALIDATION_RATIOS:
        mode = GaussianModeParams.from_ratio(r)
        grid = _production_grid(cfg, mode)
        closed = split_closed_form(mode)
        quad = split_quadrature(mode, grid)
        difference = max(
            abs(closed.cosh2 - quad.cosh2),
            abs(closed.sinh2 - quad.sinh2),
            abs(closed.overlap_c - quad.overlap_c),
        )
        checks.append(_check(f"closed_vs_quadrature_r={r:g}", difference, 1e-8))
        identity = max(
            abs(closed.cosh2 - closed.sinh2 - 1.0), abs(quad.cosh2 - quad.sinh2 - 1.0)
        )
        checks.append(_check(f"hyperbolic_identity_r={r:g}", identity, 1e-12))
        excess = abs(closed.overlap_c) - 1.0
        checks.append(_check(f"overlap_bound_r={r:g}", excess, 0.0))
    return checks


def _moment_chain_checks(cfg: SweepConfig) -> List[ValidationCheck]:
    mode = GaussianModeParams.from_ratio(1.0)
    closed = vacuum_moments(split_closed_form(mode))
    production = _production_grid(cfg, mode)
    quad = vacuum_moments(split_quadrature(mode, production))
    # 256 panels of order 16 give K = 4096 bins
    fine = grid_for_mode(mode, 256, 16, cfg.grid.cutoff_sigmas)
    discrete_mode = discretize_mode(mode, fine)
    discrete = wick_moments_discrete(discrete_mode)
    fock = fock_brute_force(compress_mode(discrete_mode))
    return [
        _check("moments_closed_vs_quadrature", closed.max_difference(quad), 1e-8),
        _check("moments_closed_vs_discrete", closed.max_difference(discrete), 1e-6),
        _check("moments_discrete_vs_fock", discrete.max_difference(fock), 1e-10),
    ]


def _product_checks(cfg: SweepConfig) -> List[ValidationCheck]:
    checks = []
    for r in (1.0, 0.1):
        product = uncertainty_product(GaussianModeParams.from_ratio(r)).product
        first, second = product_decomposition(r)
        defect = abs(product**2 - first - second)
        checks.append(_check(f"product_decomposition_r={r:g}", defect, 1e-12))
    limit = subcycle_limit(cfg.limit)
    checks.append(_check("subcycle_limit", abs(limit.value - SUBCYCLE_LIMIT), 1e-6))
    return checks


def _invariance_checks() -> List[ValidationCheck]:
    base = GaussianModeParams.from_ratio(0.3)
    scaled = GaussianModeParams.from_ratio(0.3, area=10.0)
    product_change = abs(
        uncertainty_product(base).product - uncertainty_product(scaled).product
    )

    toy = build_grid(2.0, 1, 2)
    unit = DetectorParams(omega_u=1.0, sigma_u=1.0, coupling=0.3)
    wide = DetectorParams(omega_u=1.0, sigma_u=1.0, coupling=0.3, area=10.0)
    response_change = detector_response(unit, toy, 400).max_difference(
        detector_response(wide, toy, 400)
    )

    shifted = GaussianModeParams.from_ratio(1.0, t0=0.7)
    reference = vacuum_moments(split_closed_form(GaussianModeParams.from_ratio(1.0)))
    moved = vacuum_moments(split_closed_form(shifted))
    rotation = cmath.exp(2j * shifted.t0 * shifted.omega0)
    covariance = max(
        abs(moved.n - reference.n),
        abs(moved.n2 - reference.n2),
        abs(moved.m - reference.m * rotation),
    )

    small = build_grid(13.0, 1, 8)
    matched = GaussianModeParams.from_ratio(1.0)
    detector = DetectorParams(
        omega_u=1.0, sigma_u=1.0, coupling=calibrate_coupling(math.pi / 2, matched)
    )
    state = evolve_symplectic(detector, matched, small, 400)
    state.validate()

    return [
        _check("area_independence_product", product_change, 1e-12),
        _check("area_independence_dynamics", response_change, 1e-12),
        _check("t0_phase_covariance", covariance, 1e-12),
        _check("purity", state.purity_defect(), 1e-9),
    ]


def run_validation(cfg: SweepConfig) -> List[ValidationCheck]:
    """Run the acceptance checks of the analytic formulas and the oracles.

    Args:
        cfg: Configuration providing grid and limit settings

    Returns:
        List of ValidationCheck, failed checks included
    """
    start_time = time.time()
    groups: List[Callable[[], List[ValidationCheck]]] = [
        lambda: _closed_form_checks(cfg),
        lambda: _moment_chain_checks(cfg),
        lambda: _product_checks(cfg),
        _invariance_checks,
    ]

    checks: List[ValidationCheck] = []
    for i, group in enumerate(groups, 1):
        report_progress(logger, i, len(groups), "check groups")
        checks.extend(group())

    failed = sum(1 for check in checks if not check.passed)
    elapsed = format_elapsed(time.time() - start_time)
    summary = f"{len(checks) - failed} passed, {failed} failed"
    logger.info(f"Validation completed in {elapsed}: {summary}")
    print(f"Validation completed in {elapsed}: {summary}")
    return checks


def failed_checks(checks: List[ValidationCheck]) -> Optional[List[str]]:
    """Names of failed checks, or None when all passed."""
    names = [check.name for check in checks if not check.passed]
    return names or None
