"""Logging helpers for sshcsim."""

from .logging import LEVELS, parse_level, setup_logging

__all__ = ["LEVELS", "parse_level", "setup_logging"]
