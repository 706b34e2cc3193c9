"""Unit tests for CSV and SVG emission."""

import csv
import unittest
from pathlib import Path

import pytest

from subcycle_uncertainty.errors import ConfigError
from subcycle_uncertainty.experiments.emitters import (
    REFERENCE_LINE_ID,
    emit_convergence,
    emit_csv,
    emit_limit,
    emit_magnus,
    emit_svg,
    emit_validation,
    format_value,
)
from subcycle_uncertainty.models import (
    ConvergenceRow,
    LimitEstimate,
    MagnusRow,
    SweepRow,
    ValidationCheck,
)
from subcycle_uncertainty.utils.constants import SWEEP_CSV_HEADER


def _sweep_rows() -> list:
    return [
        SweepRow(0.1, 1.5, 3.5, 3.9, 31.0, 0.56, 0.7071, 0.397, ("subcycle",)),
        SweepRow(1.0, 0.28, 0.083, 0.24, 0.16, 0.39, 0.7071, 0.273, ()),
    ]


class TestFormatValue(unittest.TestCase):
    """Test cell rendering."""

    def test_values(self) -> None:
        """Floats keep full precision, flags join with semicolons."""
        self.assertEqual(format_value(0.1), "0.10000000000000001")
        self.assertEqual(format_value(True), "true")
        self.assertEqual(format_value(3), "3")
        self.assertEqual(format_value(("a", "b")), "a;b")
        self.assertEqual(format_value(()), "")
        self.assertEqual(format_value(1 - 2j), "1-2j")


def test_sweep_csv(test_out_dir: Path) -> None:
    """The sweep table has the fixed header and LF line endings."""
    path = emit_csv(_sweep_rows(), test_out_dir / "sweep.csv")
    raw = path.read_bytes()
    assert b"\r\n" not in raw
    assert raw.splitlines()[0].decode() == ",".join(SWEEP_CSV_HEADER)

    with open(path, newline="", encoding="utf-8") as f:
        records = list(csv.DictReader(f))
    assert len(records) == 2
    assert float(records[0]["product"]) == 0.397
    assert records[0]["flags"] == "subcycle"
    assert records[1]["flags"] == ""


def test_sweep_svg(test_out_dir: Path) -> None:
    """The plot carries the labelled reference line at 1/sqrt(2 pi)."""
    path = emit_svg(_sweep_rows(), test_out_dir / "sweep.svg")
    text = path.read_text(encoding="utf-8")
    assert text.lstrip().startswith("<?xml")
    assert f'id="{REFERENCE_LINE_ID}"' in text
    assert "0.3989423" in text


def test_svg_scales_with_hbar(test_out_dir: Path) -> None:
    """The reference line follows hbar."""
    path = emit_svg(_sweep_rows(), test_out_dir / "sweep.svg", hbar=2.0)
    assert "0.7978846" in path.read_text(encoding="utf-8")


def test_svg_is_reproducible(test_out_dir: Path) -> None:
    """Two renders of the same rows are byte-identical."""
    first = emit_svg(_sweep_rows(), test_out_dir / "a.svg").read_bytes()
    second = emit_svg(_sweep_rows(), test_out_dir / "b.svg").read_bytes()
    assert first == second


def test_empty_input(test_out_dir: Path) -> None:
    """Nothing to write raises ConfigError."""
    with pytest.raises(ConfigError):
        emit_csv([], test_out_dir / "sweep.csv")
    with pytest.raises(ConfigError):
        emit_svg([], test_out_dir / "sweep.svg")


def test_limit_table(test_out_dir: Path) -> None:
    """Ladder rows are followed by the extrapolated value at r = 0."""
    estimate = LimitEstimate(
        value=0.3989,
        residual=1e-9,
        ladder=(1e-2, 1e-3),
        products=(0.3988, 0.39894),
        extrapolated=True,
    )
    path = emit_limit(estimate, test_out_dir / "limit.csv")
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "r,product,residual,extrapolated"
    assert len(lines) == 4
    cells = lines[-1].split(",")
    assert float(cells[0]) == 0.0
    assert float(cells[1]) == 0.3989
    assert cells[-1] == "true"


def test_other_tables(test_out_dir: Path) -> None:
    """Dynamics, convergence and validation tables are written."""
    magnus = emit_magnus(
        [MagnusRow(5.0, 400, 0.12, 0.1, 0.2, 0.18, ("beamsplitter_breakdown",))],
        test_out_dir / "dynamics.csv",
    )
    header, record = magnus.read_text().splitlines()
    assert header.startswith("sigma_ratio,steps,n_exact")
    assert header.endswith(",flags")
    assert record.endswith(",beamsplitter_breakdown")

    convergence = emit_convergence(
        [ConvergenceRow("quadrature", 16, 1.08, 1e-9)], test_out_dir / "conv.csv"
    )
    assert convergence.read_text().splitlines()[1].startswith("quadrature,16,")

    validation = emit_validation(
        [ValidationCheck("purity", 1e-12, 1e-9, True)], test_out_dir / "val.csv"
    )
    assert validation.read_text().splitlines()[1].endswith(",true")
