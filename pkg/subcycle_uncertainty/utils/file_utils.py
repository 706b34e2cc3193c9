"""File utility functions for the subcycle_uncertainty package."""

import logging
import os
from pathlib import Path

from subcycle_uncertainty.errors import ConfigError

logger = logging.getLogger(__name__)


def create_directory(directory: Path) -> None:
    """Create a directory if it doesn't exist.

    Args:
        directory: Directory path to create

    Raises:
        ConfigError: If the path exists as a file or cannot be created
    """
    if directory.exists() and not directory.is_dir():
        raise ConfigError(f"Output path is not a directory: {directory}")
    if not directory.exists():
        try:
            directory.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise ConfigError(f"Cannot create directory {directory}: {e}") from e
        logger.debug(f"Created directory: {directory}")


def ensure_writable(path: Path) -> Path:
    """Make sure a file can be written at ``path``.

    Creates the parent directory if needed.

    Args:
        path: Target file path

    Returns:
        The same path

    Raises:
        ConfigError: If the parent directory is not writable or the path is a directory
    """
    create_directory(path.parent)
    if path.is_dir():
        raise ConfigError(f"Output path is a directory: {path}")
    if not os.access(path.parent, os.W_OK):
        raise ConfigError(f"Output directory is not writable: {path.parent}")
    return path

