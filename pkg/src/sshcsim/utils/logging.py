"""Logging setup shared by the library and the sshc command line."""

import logging
import sys
from typing import TextIO

LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")

DEFAULT_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

# Third-party loggers that are chatty at DEBUG (font scans, SVG backend).
_NOISY = ("matplotlib", "PIL")


def parse_level(level: str) -> int:
    """Numeric logging level for a case-insensitive level name.

    Raises:
        ValueError: If the name is not one of LEVELS
    """
    name = level.strip().upper()
    if name not in LEVELS:
        raise ValueError(f"unknown log level {level!r}, expected one of {', '.join(LEVELS)}")
    return int(getattr(logging, name))


def setup_logging(
    level: str = "INFO",
    format_string: str | None = None,
    stream: TextIO | None = None,
) -> logging.Logger:
    """Configure the root handler and return the sshcsim logger.

    Records go to stderr unless another stream is given, so that tables
    written to stdout stay machine-readable. Matplotlib and Pillow are held
    at WARNING whatever the requested level.

    Args:
        level: One of LEVELS, case-insensitive
        format_string: Custom format string for log records
        stream: Output stream for log records

    Returns:
        The "sshcsim" package logger

    Raises:
        ValueError: If level is not a known level name
    """
    numeric = parse_level(level)
    logging.basicConfig(
        level=numeric,
        format=format_string or DEFAULT_FORMAT,
        stream=stream or sys.stderr,
        force=True,
    )
    for name in _NOISY:
        logging.getLogger(name).setLevel(max(numeric, logging.WARNING))

    logger = logging.getLogger("sshcsim")
    logger.setLevel(numeric)
    return logger
