"""Unit tests for data models."""

import math
import unittest
from pathlib import Path

import numpy as np
from pydantic import ValidationError

from subcycle_uncertainty.models import (
    DetectorParams,
    DiscretizedMode,
    DynamicsSettings,
    GaussianModeParams,
    LimitSettings,
    MomentSet,
    SweepConfig,
)


class TestGaussianModeParams(unittest.TestCase):
    """Test the mode parameters."""

    def test_ratio(self) -> None:
        """r is omega0/sigma and from_ratio works in units of sigma."""
        mode = GaussianModeParams(omega0=3.0, sigma=2.0, t0=0.5)
        self.assertEqual(mode.r, 1.5)
        self.assertEqual(GaussianModeParams.from_ratio(1.5).omega0, 1.5)

    def test_invalid(self) -> None:
        """Non-positive or non-finite parameters are rejected."""
        with self.assertRaises(ValidationError):
            GaussianModeParams(omega0=0.0)
        with self.assertRaises(ValidationError):
            GaussianModeParams(omega0=1.0, sigma=-1.0)
        with self.assertRaises(ValidationError):
            GaussianModeParams(omega0=math.inf)
        with self.assertRaises(ValidationError):
            GaussianModeParams(omega0=1e300, sigma=1e-300)

    def test_frozen(self) -> None:
        """Parameters are immutable."""
        mode = GaussianModeParams.from_ratio(1.0)
        with self.assertRaises(ValidationError):
            mode.omega0 = 2.0  # type: ignore[misc]


class TestDetectorParams(unittest.TestCase):
    """Test the detector strength derivation."""

    def test_lambda_alias(self) -> None:
        """JSON input may name the coupling lambda."""
        detector = DetectorParams.model_validate(
            {"omega_u": 1.0, "sigma_u": 1.0, "lambda": 0.4}
        )
        self.assertEqual(detector.coupling, 0.4)
        expected = -0.2 * (math.pi / 2.0) ** 0.25
        self.assertAlmostEqual(detector.theta_u, expected, places=14)

    def test_round_trip_of_strength(self) -> None:
        """theta_u and lambda map onto each other."""
        detector = DetectorParams(omega_u=0.3, sigma_u=2.0, theta_u=0.7)
        again = DetectorParams(omega_u=0.3, sigma_u=2.0, coupling=detector.coupling)
        self.assertAlmostEqual(again.theta_u, 0.7, places=14)

    def test_missing_frequency(self) -> None:
        """Missing frequencies are reported by field validation."""
        with self.assertRaises(ValidationError):
            DetectorParams.model_validate({"sigma_u": 1.0, "theta_u": 0.5})

    def test_mode_matched(self) -> None:
        """A matched detector reports itself as tuned to the mode."""
        mode = GaussianModeParams(omega0=2.0, sigma=0.5, t0=1.0, area=3.0)
        detector = DetectorParams.mode_matched(mode, 0.2)
        self.assertTrue(detector.is_mode_matched(mode))
        self.assertEqual(detector.area, 3.0)
        self.assertFalse(
            detector.is_mode_matched(GaussianModeParams(omega0=2.0, sigma=0.6))
        )


class TestMomentSet(unittest.TestCase):
    """Test Wick moment construction."""

    def test_from_wick(self) -> None:
        """n2 = |m|^2 + 2n^2 + n and var = |m|^2 + n^2 + n."""
        moments = MomentSet.from_wick(0.5, 0.3 + 0.4j)
        self.assertAlmostEqual(moments.abs_m, 0.5)
        self.assertAlmostEqual(moments.n2, 0.25 + 0.5 + 0.5)
        self.assertAlmostEqual(moments.var, 0.25 + 0.25 + 0.5)

    def test_max_difference(self) -> None:
        """The largest component difference is reported."""
        a = MomentSet.from_wick(0.1, 0.2)
        b = MomentSet.from_wick(0.1, 0.2j)
        self.assertAlmostEqual(a.max_difference(b), abs(0.2 - 0.2j))
        self.assertEqual(a.max_difference(a), 0.0)


class TestDiscretizedMode(unittest.TestCase):
    """Test the discretized mode container."""

    def test_commutator(self) -> None:
        """The commutator is sum |alpha|^2 - sum |beta|^2."""
        mode = DiscretizedMode(alpha=np.array([1.0, 0.5j]), beta=np.array([0.5, 0.0]))
        self.assertAlmostEqual(mode.commutator, 1.0)
        self.assertAlmostEqual(mode.defect, 0.0)
        self.assertEqual(mode.mode_count, 2)


class TestSettings(unittest.TestCase):
    """Test the run configuration."""

    def test_defaults(self) -> None:
        """Default sweep spans 1e-3 to 10 on 30 log-spaced points."""
        config = SweepConfig()
        self.assertEqual(len(config.r_values), 30)
        self.assertAlmostEqual(config.r_values[0], 1e-3)
        self.assertAlmostEqual(config.r_values[-1], 10.0)
        self.assertEqual(config.dt_convention, "stddev")
        self.assertEqual(config.dynamics.ratios, [5.0, 10.0, 25.0, 50.0])

    def test_with_out_dir(self) -> None:
        """Replacing the output directory leaves the rest alone."""
        config = SweepConfig(hbar=2.0).with_out_dir(Path("elsewhere"))
        self.assertEqual(config.output.out_dir, Path("elsewhere"))
        self.assertEqual(config.hbar, 2.0)

    def test_invalid_ladders(self) -> None:
        """Ratios must be positive and finite."""
        with self.assertRaises(ValidationError):
            SweepConfig(r_values=[1.0, math.inf])
        with self.assertRaises(ValidationError):
            LimitSettings(ladder=[0.0])
        with self.assertRaises(ValidationError):
            DynamicsSettings(ratios=[-5.0])
        with self.assertRaises(ValidationError):
            DynamicsSettings(window_sigmas=4.0)


if __name__ == "__main__":
    unittest.main()
