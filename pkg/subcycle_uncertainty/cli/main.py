"""Command-line interface for Subcycle Uncertainty.

Default paths:
- Output directory: ./results (override with --out or SUBCYCLE_OUT_DIR)
- Log directory: ./logs (from the current working directory)

Exit codes: 0 on success, 1 for configuration errors, 2 when a numerical
procedure fails to converge or a validation check fails. `dynamics --strict`
also exits 2 when a row disagrees with the beamsplitter prediction.
"""

import logging
import pathlib
import sys
from typing import Callable, NoReturn, Optional, TypeVar

import click
from pydantic import ValidationError

from subcycle_uncertainty import __version__
from subcycle_uncertainty.errors import ConfigError, ConvergenceError
from subcycle_uncertainty.models import SweepConfig
from subcycle_uncertainty.utils.config_utils import load_config
from subcycle_uncertainty.utils.constants import LOG_FILE_NAME, OUT_DIR_ENVVAR
from subcycle_uncertainty.utils.file_utils import create_directory

logger = logging.getLogger(__name__)

EXIT_CONFIG_ERROR = 1
EXIT_CONVERGENCE_ERROR = 2

T = TypeVar("T")

config_option = click.option(
    "--config",
    "-c",
    "config_path",
    type=click.Path(dir_okay=False, path_type=pathlib.Path),
    default=None,
    help="JSON configuration file (default: built-in defaults)",
)
out_option = click.option(
    "--out",
    "-o",
    "out_dir",
    type=click.Path(file_okay=False, dir_okay=True, path_type=pathlib.Path),
    envvar=OUT_DIR_ENVVAR,
    default=None,
    help=f"Output directory (default: from config, env var {OUT_DIR_ENVVAR})",
)


def _fail(message: str, code: int) -> NoReturn:
    logger.error(message)
    click.echo(f"Error: {message}", err=True)
    sys.exit(code)


def _guarded(action: Callable[[], T]) -> T:
    """Run a command body and map package errors onto exit codes."""
    try:
        return action()
    except (ConfigError, ValidationError) as e:
        _fail(str(e), EXIT_CONFIG_ERROR)
    except ConvergenceError as e:
        _fail(str(e), EXIT_CONVERGENCE_ERROR)


def _load(
    config_path: Optional[pathlib.Path], out_dir: Optional[pathlib.Path]
) -> SweepConfig:
    config = _guarded(lambda: load_config(config_path, out_dir))
    click.echo(f"Output directory: {config.output.out_dir.absolute()}")
    return config


@click.group()
@click.version_option(version=__version__)
@click.option(
    "--log-dir",
    "-l",
    type=click.Path(file_okay=False, dir_okay=True, path_type=pathlib.Path),
    default=pathlib.Path("logs"),
    help="Directory to store log files (default: ./logs)",
)
@click.option("--verbose", "-v", is_flag=True, help="Enable verbose output")
@click.pass_context
def main(ctx: click.Context, log_dir: pathlib.Path, verbose: bool) -> None:
    """Subcycle Uncertainty - the time-energy product of subcycle vacuum modes.

    Computes the vacuum statistics of Gaussian wavepacket modes, the response
    of a rapidly switched harmonic-oscillator detector to them and the
    resulting time-energy uncertainty product, and checks the analytic
    results against exact Gaussian-state and truncated-Fock simulations.

    All commands accept a JSON configuration; an empty object reproduces the
    default sweep over r = omega0/sigma.
    """
    try:
        create_directory(log_dir)
    except ConfigError as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(EXIT_CONFIG_ERROR)

    # Setup logging
    log_level = logging.DEBUG if verbose else logging.INFO
    log_format = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    logging.basicConfig(
        level=log_level,
        format=log_format,
        handlers=[
            logging.FileHandler(log_dir / LOG_FILE_NAME),
            logging.StreamHandler(sys.stdout),
        ],
    )

    ctx.ensure_object(dict)
    ctx.obj["log_dir"] = log_dir
    ctx.obj["verbose"] = verbose


@main.command()
@config_option
@out_option
@click.option(
    "--format",
    "-f",
    "output_format",
    type=click.Choice(["csv", "svg", "both"]),
    default="both",
    help="Artifacts to write (default: both)",
)
def sweep(
    config_path: Optional[pathlib.Path],
    out_dir: Optional[pathlib.Path],
    output_format: str,
) -> None:
    """Tabulate the uncertainty product over the configured ratios."""
    # Import inside function to keep matplotlib out of CLI start-up
    from subcycle_uncertainty.experiments.controller import run_sweep
    from subcycle_uncertainty.experiments.emitters import emit_csv, emit_svg

    config = _load(config_path, out_dir)
    click.echo(f"Sweeping {len(config.r_values)} ratios...")
    rows = _guarded(lambda: run_sweep(config))

    output = config.output
    if output_format in ("csv", "both"):
        path = _guarded(lambda: emit_csv(rows, output.out_dir / output.csv_name))
        click.echo(f"Wrote {path}")
    if output_format in ("svg", "both"):
        path = _guarded(
            lambda: emit_svg(rows, output.out_dir / output.svg_name, config.hbar)
        )
        click.echo(f"Wrote {path}")
    click.echo("Sweep completed!")


@main.command()
@config_option
@out_option
def limit(
    config_path: Optional[pathlib.Path], out_dir: Optional[pathlib.Path]
) -> None:
    """Extrapolate the uncertainty product to the deep-subcycle limit."""
    from subcycle_uncertainty.experiments.controller import run_limit
    from subcycle_uncertainty.experiments.emitters import emit_limit

    config = _load(config_path, out_dir)
    estimate = _guarded(lambda: run_limit(config))
    path = _guarded(lambda: emit_limit(estimate, config.output.out_dir / "limit.csv"))

    click.echo(f"dE*dt -> {estimate.value:.10f} (residual {estimate.residual:.3g})")
    click.echo(f"Wrote {path}")


@main.command()
@config_option
@out_option
@click.option(
    "--strict",
    is_flag=True,
    help="Exit with code 2 when any row is flagged",
)
def dynamics(
    config_path: Optional[pathlib.Path], out_dir: Optional[pathlib.Path], strict: bool
) -> None:
    """Compare exact detector dynamics with the beamsplitter prediction."""
    from subcycle_uncertainty.experiments.controller import run_dynamics
    from subcycle_uncertainty.experiments.emitters import emit_magnus

    config = _load(config_path, out_dir)
    click.echo(f"Running {len(config.dynamics.ratios)} dynamics comparisons...")
    rows = _guarded(lambda: run_dynamics(config))
    path = _guarded(lambda: emit_magnus(rows, config.output.out_dir / "dynamics.csv"))

    for row in rows:
        flags = f" [{', '.join(row.flags)}]" if row.flags else ""
        click.echo(
            f"  sigma_u/omega_u = {row.sigma_ratio:g}: "
            f"relative deviation {row.relative_deviation:.3g}{flags}"
        )
    click.echo(f"Wrote {path}")

    flagged = [row for row in rows if row.flags]
    if flagged:
        message = (
            f"{len(flagged)} of {len(rows)} rows disagree with the beamsplitter "
            "prediction"
        )
        if strict:
            _fail(message, EXIT_CONVERGENCE_ERROR)
        click.echo(f"Warning: {message}")


@main.command()
@config_option
@out_option
def converge(
    config_path: Optional[pathlib.Path], out_dir: Optional[pathlib.Path]
) -> None:
    """Tabulate errors against quadrature, discretization and step refinement."""
    from subcycle_uncertainty.experiments.controller import run_convergence
    from subcycle_uncertainty.experiments.emitters import (
        emit_convergence,
        emit_magnus,
    )

    config = _load(config_path, out_dir)
    report = _guarded(lambda: run_convergence(config))
    out = config.output.out_dir

    path = _guarded(lambda: emit_convergence(report.rows, out / "convergence.csv"))
    click.echo(f"Wrote {path}")
    if report.magnus:
        path = _guarded(lambda: emit_magnus(report.magnus, out / "magnus.csv"))
        click.echo(f"Wrote {path}")


@main.command()
@config_option
@out_option
def validate(
    config_path: Optional[pathlib.Path], out_dir: Optional[pathlib.Path]
) -> None:
    """Check the analytic formulas against quadrature and the exact oracles."""
    from subcycle_uncertainty.experiments.controller import (
        failed_checks,
        run_validation,
    )
    from subcycle_uncertainty.experiments.emitters import emit_validation

    config = _load(config_path, out_dir)
    checks = _guarded(lambda: run_validation(config))
    path = _guarded(
        lambda: emit_validation(checks, config.output.out_dir / "validation.csv")
    )
    click.echo(f"Wrote {path}")

    failed = failed_checks(checks)
    if failed:
        message = f"{len(failed)} check(s) failed: {', '.join(failed)}"
        _fail(message, EXIT_CONVERGENCE_ERROR)
    click.echo(f"All {len(checks)} checks passed!")


if __name__ == "__main__":
    main()
