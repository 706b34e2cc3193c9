"""Test fixtures and configuration for the subcycle_uncertainty package."""

import json
import shutil
from pathlib import Path
from typing import Generator

import pytest

from subcycle_uncertainty.models import FrequencyGrid, GaussianModeParams
from subcycle_uncertainty.spectral.quadrature import build_grid, grid_for_mode


@pytest.fixture
def test_out_dir(tmp_path: Path) -> Generator[Path, None, None]:
    """Fixture for creating a temporary output directory."""
    out_dir = tmp_path / "results"
    out_dir.mkdir(exist_ok=True)

    yield out_dir

    # Clean up after test
    if out_dir.exists():
        shutil.rmtree(out_dir)


@pytest.fixture
def unit_mode() -> GaussianModeParams:
    """Mode at r = 1 in internal units."""
    return GaussianModeParams.from_ratio(1.0)


@pytest.fixture
def production_grid(unit_mode: GaussianModeParams) -> FrequencyGrid:
    """Default production grid for the r = 1 mode."""
    return grid_for_mode(unit_mode, 64, 16, 12.0)


@pytest.fixture
def toy_grid() -> FrequencyGrid:
    """Two field bins, small enough for the Fock oracle."""
    return build_grid(2.0, 1, 2)


@pytest.fixture
def fast_config_file(tmp_path: Path) -> Path:
    """A configuration that keeps every command fast."""
    config = {
        "r_values": [0.1, 1.0, 5.0],
        "limit": {"ladder": [1e-2, 1e-3, 1e-4]},
        "dynamics": {
            "ratios": [5.0, 10.0],
            "panels": 4,
            "order": 16,
            "initial_steps": 200,
            "max_steps": 51200,
            "step_tolerance": 1e-6,
        },
        "convergence": {
            "quadrature_panels": [4, 8, 16],
            "k_panels": [32, 64],
            "step_ladder": [100, 200, 400],
            "include_magnus": False,
        },
    }
    path = tmp_path / "config.json"
    path.write_text(json.dumps(config), encoding="utf-8")
    return path
