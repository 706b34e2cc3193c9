"""Tests for the command line interface."""

import json
import shutil
import tempfile
import unittest
from pathlib import Path
from typing import Dict, Optional
from unittest.mock import patch

from click.testing import CliRunner, Result

from subcycle_uncertainty.cli.main import main
from subcycle_uncertainty.errors import StepConvergenceError
from subcycle_uncertainty.models import MagnusRow, ValidationCheck
from subcycle_uncertainty.utils.constants import (
    FLAG_NOT_DECREASING,
    LOG_FILE_NAME,
    OUT_DIR_ENVVAR,
)

FAST_CONFIG = {
    "r_values": [0.1, 1.0, 5.0],
    "convergence": {
        "quadrature_panels": [4, 8],
        "k_panels": [32],
        "step_ladder": [100, 200],
        "include_magnus": False,
    },
    "dynamics": {
        "ratios": [5.0],
        "panels": 4,
        "order": 16,
        "initial_steps": 200,
        "max_steps": 51200,
        "step_tolerance": 1e-6,
    },
}


class TestCli(unittest.TestCase):
    """Test the command line interface."""

    def setUp(self) -> None:
        """Set up test fixtures."""
        self.runner = CliRunner()
        self.temp_dir = Path(tempfile.mkdtemp())
        self.log_dir = self.temp_dir / "logs"
        self.out_dir = self.temp_dir / "results"
        self.config = self.temp_dir / "config.json"
        self.config.write_text(json.dumps(FAST_CONFIG), encoding="utf-8")

    def tearDown(self) -> None:
        """Tear down test fixtures."""
        if self.temp_dir.exists():
            shutil.rmtree(self.temp_dir)

    def _invoke(self, *args: str, env: Optional[Dict[str, str]] = None) -> Result:
        return self.runner.invoke(
            main, ["--log-dir", str(self.log_dir), *args], env=env
        )

    def test_main_help(self) -> None:
        """Test the main help command."""
        result = self.runner.invoke(main, ["--help"])
        self.assertEqual(result.exit_code, 0)
        self.assertIn("Subcycle Uncertainty", result.output)
        for command in ("sweep", "limit", "dynamics", "converge", "validate"):
            self.assertIn(command, result.output)

    def test_sweep_command(self) -> None:
        """Test the sweep command."""
        result = self._invoke(
            "--verbose", "sweep", "-c", str(self.config), "-o", str(self.out_dir)
        )
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertIn("Sweep completed!", result.output)
        self.assertTrue((self.out_dir / "sweep.csv").exists())
        self.assertTrue((self.out_dir / "sweep.svg").exists())
        self.assertTrue((self.log_dir / LOG_FILE_NAME).exists())

    def test_sweep_csv_only(self) -> None:
        """--format csv skips the plot."""
        result = self._invoke(
            "sweep", "-c", str(self.config), "-o", str(self.out_dir), "-f", "csv"
        )
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertFalse((self.out_dir / "sweep.svg").exists())

    def test_out_dir_from_environment(self) -> None:
        """The output directory can come from the environment."""
        env_out = self.temp_dir / "from_env"
        result = self._invoke(
            "sweep", "-c", str(self.config), env={OUT_DIR_ENVVAR: str(env_out)}
        )
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertTrue((env_out / "sweep.csv").exists())

    def test_limit_command(self) -> None:
        """Test the limit command."""
        result = self._invoke("limit", "-c", str(self.config), "-o", str(self.out_dir))
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertIn("dE*dt -> 0.39894", result.output)
        self.assertTrue((self.out_dir / "limit.csv").exists())

    def test_converge_command(self) -> None:
        """Test the converge command."""
        result = self._invoke(
            "converge", "-c", str(self.config), "-o", str(self.out_dir)
        )
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertTrue((self.out_dir / "convergence.csv").exists())
        self.assertFalse((self.out_dir / "magnus.csv").exists())

    @patch("subcycle_uncertainty.experiments.controller.run_dynamics")
    def test_dynamics_failure(self, mock_dynamics) -> None:
        """Step convergence failures exit with code 2."""
        mock_dynamics.side_effect = StepConvergenceError("did not settle")
        result = self._invoke(
            "dynamics", "-c", str(self.config), "-o", str(self.out_dir)
        )
        self.assertEqual(result.exit_code, 2)
        self.assertIn("did not settle", result.output)

    @patch("subcycle_uncertainty.experiments.controller.run_dynamics")
    def test_dynamics_flagged_rows(self, mock_dynamics) -> None:
        """Flagged rows warn by default and exit 2 under --strict."""
        mock_dynamics.return_value = [
            MagnusRow(5.0, 1000, 3.6e5, 1.5, 1e11, 3.9),
            MagnusRow(10.0, 1000, 1.4e6, 3.5, 1e12, 16.0, (FLAG_NOT_DECREASING,)),
        ]
        args = ("dynamics", "-c", str(self.config), "-o", str(self.out_dir))
        result = self._invoke(*args)
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertIn(f"[{FLAG_NOT_DECREASING}]", result.output)
        self.assertIn("Warning: 1 of 2 rows disagree", result.output)
        self.assertTrue((self.out_dir / "dynamics.csv").exists())

        result = self._invoke(*args, "--strict")
        self.assertEqual(result.exit_code, 2)

        mock_dynamics.return_value = mock_dynamics.return_value[:1]
        result = self._invoke(*args, "--strict")
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertNotIn("Warning", result.output)

    @patch("subcycle_uncertainty.experiments.controller.run_validation")
    def test_validate_command(self, mock_validation) -> None:
        """Passing checks exit 0, failing checks exit 2."""
        mock_validation.return_value = [ValidationCheck("purity", 1e-12, 1e-9, True)]
        result = self._invoke(
            "validate", "-c", str(self.config), "-o", str(self.out_dir)
        )
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertIn("All 1 checks passed!", result.output)

        mock_validation.return_value = [ValidationCheck("purity", 1e-3, 1e-9, False)]
        result = self._invoke(
            "validate", "-c", str(self.config), "-o", str(self.out_dir)
        )
        self.assertEqual(result.exit_code, 2)
        self.assertIn("purity", result.output)

    def test_bad_config(self) -> None:
        """Invalid or missing configuration files exit with code 1."""
        bad = self.temp_dir / "bad.json"
        bad.write_text(json.dumps({"r_values": [-1.0]}), encoding="utf-8")
        result = self._invoke("sweep", "-c", str(bad), "-o", str(self.out_dir))
        self.assertEqual(result.exit_code, 1)

        missing = self.temp_dir / "missing.json"
        result = self._invoke("limit", "-c", str(missing))
        self.assertEqual(result.exit_code, 1)


if __name__ == "__main__":
    unittest.main()
