"""CSV and SVG emission of experiment results."""

import csv
import logging
from pathlib import Path
from typing import Any, List, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from subcycle_uncertainty.errors import ConfigError  # noqa: E402
from subcycle_uncertainty.models import (  # noqa: E402
    ConvergenceRow,
    LimitEstimate,
    MagnusRow,
    SweepRow,
    ValidationCheck,
)
from subcycle_uncertainty.utils.constants import (  # noqa: E402
    SUBCYCLE_LIMIT,
    SWEEP_CSV_HEADER,
)
from subcycle_uncertainty.utils.file_utils import ensure_writable  # noqa: E402

logger = logging.getLogger(__name__)

REFERENCE_LINE_ID = "subcycle-limit"

# Fixed metadata and hash salt keep the SVG bytes reproducible
_SVG_RC = {
    "svg.hashsalt": "subcycle-uncertainty",
    "svg.fonttype": "none",
}


def format_value(value: Any) -> str:
    """Render a table cell; floats use 17 significant digits."""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return f"{value:.17g}"
    if isinstance(value, complex):
        return f"{value.real:.17g}{value.imag:+.17g}j"
    if isinstance(value, (tuple, list)):
        return ";".join(str(v) for v in value)
    return str(value)


def emit_table(
    header: Sequence[str], records: Sequence[Sequence[Any]], path: Path
) -> Path:
    """Write a CSV table with LF line endings.

    Args:
        header: Column names
        records: Rows of cell values
        path: Output file

    Returns:
        The path written

    Raises:
        ConfigError: If there are no records or the path is not writable
    """
    if not records:
        raise ConfigError(f"no rows to write to {path}")
    ensure_writable(path)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for record in records:
            writer.writerow([format_value(value) for value in record])
    logger.info(f"Wrote {len(records)} rows to {path}")
    return path


def sweep_records(rows: Sequence[SweepRow]) -> List[List[Any]]:
    return [
        [
            row.r,
            row.theta_g,
            row.n_g,
            row.abs_m,
            row.n2,
            row.delta_E,
            row.delta_t,
            row.product,
            row.flags,
        ]
        for row in rows
    ]


def emit_csv(rows: Sequence[SweepRow], path: Path) -> Path:
    """Write sweep rows under the fixed sweep header."""
    return emit_table(SWEEP_CSV_HEADER, sweep_records(rows), path)


def emit_svg(rows: Sequence[SweepRow], path: Path, hbar: float = 1.0) -> Path:
    """Plot the product against r on a log axis with the subcycle limit line.

    Args:
        rows: Sweep rows
        path: Output SVG file
        hbar: Value of hbar the products are expressed in

    Returns:
        The path written

    Raises:
        ConfigError: If there are no rows or the path is not writable
    """
    if not rows:
        raise ConfigError(f"no rows to plot to {path}")
    ensure_writable(path)

    limit = SUBCYCLE_LIMIT * hbar
    ordered = sorted(rows, key=lambda row: row.r)
    with plt.rc_context(_SVG_RC):
        fig, ax = plt.subplots(figsize=(6.4, 4.0))
        ax.semilogx(
            [row.r for row in ordered],
            [row.product for row in ordered],
            marker="o",
            markersize=3,
            label="ΔE·Δt",
        )
        reference = ax.axhline(
            limit, linestyle="--", color="gray", label=f"ħ/√(2π) = {limit:.7f}"
        )
        reference.set_gid(REFERENCE_LINE_ID)
        ax.set_xlabel("ω₀/σ")
        ax.set_ylabel("ΔE·Δt")
        ax.legend()
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)

    logger.info(f"Wrote plot of {len(rows)} points to {path}")
    return path


def emit_limit(estimate: LimitEstimate, path: Path) -> Path:
    """Write the ladder products and the extrapolated limit."""
    records: List[List[Any]] = [
        [r, product, "", ""] for r, product in zip(estimate.ladder, estimate.products)
    ]
    records.append([0.0, estimate.value, estimate.residual, estimate.extrapolated])
    return emit_table(["r", "product", "residual", "extrapolated"], records, path)


def emit_magnus(rows: Sequence[MagnusRow], path: Path) -> Path:
    """Write the exact-versus-beamsplitter table with its per-row flags."""
    header = [
        "sigma_ratio",
        "steps",
        "n_exact",
        "n_predicted",
        "deviation",
        "relative_deviation",
        "var_exact",
        "var_predicted",
        "var_deviation",
        "flags",
    ]
    records = [
        [
            row.sigma_ratio,
            row.steps,
            row.n_exact,
            row.n_predicted,
            row.deviation,
            row.relative_deviation,
            row.var_exact,
            row.var_predicted,
            row.var_deviation,
            row.flags,
        ]
        for row in rows
    ]
    return emit_table(header, records, path)


def emit_convergence(rows: Sequence[ConvergenceRow], path: Path) -> Path:
    """Write the refinement studies."""
    records = [[row.study, row.level, row.value, row.error] for row in rows]
    return emit_table(["study", "level", "value", "error"], records, path)


def emit_validation(checks: Sequence[ValidationCheck], path: Path) -> Path:
    """Write the acceptance checks."""
    records = [
        [check.name, check.value, check.tolerance, check.passed] for check in checks
    ]
    return emit_table(["check", "value", "tolerance", "passed"], records, path)
