"""Unit tests for the composite Gauss-Legendre grids."""

import math
import unittest

import numpy as np

from subcycle_uncertainty.errors import ConfigError
from subcycle_uncertainty.models import FrequencyGrid, GaussianModeParams
from subcycle_uncertainty.spectral.quadrature import (
    build_grid,
    grid_for_mode,
    integrate,
    mode_cutoff,
)


class TestBuildGrid(unittest.TestCase):
    """Test grid construction."""

    def test_node_count_and_bounds(self) -> None:
        """Nodes are interior, sorted and panels * order in number."""
        grid = build_grid(13.0, 8, 4)
        self.assertEqual(grid.size, 32)
        self.assertGreater(grid.nodes[0], 0.0)
        self.assertLess(grid.nodes[-1], 13.0)
        self.assertTrue(np.all(np.diff(grid.nodes) > 0))
        self.assertAlmostEqual(float(np.sum(grid.weights)), 13.0, places=12)

    def test_grid_is_read_only(self) -> None:
        """Grid arrays cannot be modified in place."""
        grid = build_grid(1.0, 2, 2)
        with self.assertRaises(ValueError):
            grid.nodes[0] = 0.5

    def test_polynomial_exactness(self) -> None:
        """A two-point rule integrates cubics exactly."""
        grid = build_grid(2.0, 1, 2)
        self.assertAlmostEqual(integrate(grid, grid.nodes**3).real, 4.0, places=14)

    def test_gaussian_integral(self) -> None:
        """The production rule integrates a half Gaussian to machine precision."""
        grid = build_grid(12.0, 64, 16)
        value = integrate(grid, np.exp(-grid.nodes**2)).real
        self.assertAlmostEqual(value, math.sqrt(math.pi) / 2.0, places=13)

    def test_fourth_order_convergence(self) -> None:
        """Halving the panel width cuts the two-point error by about 16."""
        errors = []
        for panels in (8, 16):
            grid = build_grid(math.pi, panels, 2)
            errors.append(abs(integrate(grid, np.sin(grid.nodes)).real - 2.0))
        self.assertGreater(errors[0] / errors[1], 12.0)

    def test_invalid_arguments(self) -> None:
        """Invalid cutoff, panel count or order raise ConfigError."""
        with self.assertRaises(ConfigError):
            build_grid(0.0, 4, 4)
        with self.assertRaises(ConfigError):
            build_grid(math.inf, 4, 4)
        with self.assertRaises(ConfigError):
            build_grid(1.0, 0, 4)
        with self.assertRaises(ConfigError):
            build_grid(1.0, 4, 1)

    def test_integrate_shape_mismatch(self) -> None:
        """Samples must match the node count."""
        grid = build_grid(1.0, 2, 2)
        with self.assertRaises(ConfigError):
            integrate(grid, np.ones(3))

    def test_same_as(self) -> None:
        """Grids built with identical arguments compare equal."""
        self.assertTrue(build_grid(3.0, 4, 4).same_as(build_grid(3.0, 4, 4)))
        self.assertFalse(build_grid(3.0, 4, 4).same_as(build_grid(3.0, 2, 8)))

    def test_invalid_grid_arrays(self) -> None:
        """FrequencyGrid rejects nodes outside (0, omega_max]."""
        with self.assertRaises(ValueError):
            FrequencyGrid(
                nodes=np.array([0.0, 1.0]), weights=np.ones(2), omega_max=1.0
            )
        with self.assertRaises(ValueError):
            FrequencyGrid(
                nodes=np.array([0.5, 2.0]), weights=np.ones(2), omega_max=1.0
            )


class TestModeGrid(unittest.TestCase):
    """Test grids sized for a Gaussian mode."""

    def test_cutoff(self) -> None:
        """The default cutoff is omega0 + 12 sigma."""
        mode = GaussianModeParams(omega0=3.0, sigma=0.5)
        self.assertAlmostEqual(mode_cutoff(mode), 9.0)
        self.assertAlmostEqual(grid_for_mode(mode, 4, 4).omega_max, 9.0)


if __name__ == "__main__":
    unittest.main()
