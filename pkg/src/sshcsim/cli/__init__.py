"""Command-line interface for sshcsim (requires the cli extra)."""

from .config import RunConfig, load_config
from .main import app

__all__ = ["app", "RunConfig", "load_config"]
