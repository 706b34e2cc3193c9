"""Configuration loading for the subcycle_uncertainty package."""

import logging
from pathlib import Path
from typing import Optional

from pydantic import ValidationError

from subcycle_uncertainty.errors import ConfigError
from subcycle_uncertainty.models import SweepConfig

logger = logging.getLogger(__name__)


def load_config(
    path: Optional[Path] = None, out_dir: Optional[Path] = None
) -> SweepConfig:
    """Load a run configuration from a JSON document.

    Missing fields take their defaults, so an empty object reproduces the
    default sweep.

    Args:
        path: JSON file, or None for the defaults
        out_dir: Output directory overriding the one in the file

    Returns:
        Validated SweepConfig

    Raises:
        ConfigError: If the file cannot be read or fails validation
    """
    if path is None:
        config = SweepConfig()
    else:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigError(f"Cannot read config file {path}: {e}") from e
        try:
            config = SweepConfig.model_validate_json(text)
        except ValidationError as e:
            raise ConfigError(f"Invalid config file {path}:\n{e}") from e
        logger.info(f"Loaded configuration from {path}")

    if out_dir is not None:
        config = config.with_out_dir(out_dir)
    return config
