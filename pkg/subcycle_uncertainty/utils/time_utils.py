"""Timing and progress helpers for the subcycle_uncertainty controllers."""

import logging
from typing import Optional


def format_elapsed(seconds: float) -> str:
    """Format a duration as HH:MM:SS.ss.

    Args:
        seconds: Elapsed wall-clock time in seconds

    Returns:
        Formatted duration string
    """
    if seconds < 0:
        raise ValueError("Elapsed time must be non-negative")
    hours, remainder = divmod(seconds, 3600)
    minutes, secs = divmod(remainder, 60)
    return f"{int(hours):02}:{int(minutes):02}:{secs:05.2f}"


def progress_interval(total: int) -> int:
    """Item interval that reports progress at 10% steps."""
    return max(1, total // 10)


def report_progress(
    logger: logging.Logger,
    index: int,
    total: int,
    label: str,
    interval: Optional[int] = None,
) -> None:
    """Log and print progress when ``index`` hits a reporting step.

    Args:
        logger: Logger of the calling controller
        index: 1-based position of the item just started
        total: Number of items
        label: Plural noun describing the items
        interval: Reporting interval (default: 10% of total)
    """
    step = interval or progress_interval(total)
    if index % step == 0 or index == total:
        message = f"Progress: {index}/{total} {label} ({100.0 * index / total:.1f}%)"
        logger.info(message)
        print(message)
