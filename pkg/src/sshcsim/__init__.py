"""sshcsim - Simulation and design-space exploration for SSHC rectifiers.

SSHC (synchronized switch harvesting on capacitors) rectifiers flip the
voltage of a piezoelectric transducer through a bank of k on-chip
capacitors. This package computes the flip efficiency, the flip timing
budget, output power and the silicon footprint of such a rectifier.

Installation extras:
  - plots: SVG figures (matplotlib)
  - cli: Command-line interface (typer, rich)
  - all: All functionality
"""

# Always available - domain models and numerical core
from .core import (
    bank_area,
    build_phase_schedule,
    closed_form_efficiency,
    flip_energy_loss,
    flip_once,
    footprint_report,
    inductor_comparison,
    max_on_resistance,
    max_stage_count,
    mim_area,
    optimal_storage_voltage,
    output_power_closed_form,
    share_pair,
    simulate,
    steady_state_efficiency,
    timing_report,
    total_flip_time,
    validate,
)
from .errors import ConfigurationError, SshcError, SweepSpecError, TraceError
from .models import (
    BankState,
    FlipDirection,
    FlipResult,
    PhaseSchedule,
    PiezoSource,
    PowerResult,
    ProcessParams,
    RectifierKind,
    RectifierModel,
    SettlingModel,
    SshcConfig,
    TimingReport,
    WaveformTrace,
)
from .sweep import (
    StageConstraints,
    SweepAxis,
    SweepSpec,
    SweepTable,
    best_stage_count,
    run_sweep,
)

__version__ = "0.1.0"

# Base exports - always available
__all__ = [
    "__version__",
    # Domain models
    "PiezoSource",
    "SshcConfig",
    "ProcessParams",
    "BankState",
    "FlipDirection",
    "FlipResult",
    "PhaseSchedule",
    "SettlingModel",
    "TimingReport",
    "RectifierKind",
    "RectifierModel",
    "PowerResult",
    "WaveformTrace",
    # Errors
    "SshcError",
    "ConfigurationError",
    "SweepSpecError",
    "TraceError",
    # Operations
    "build_phase_schedule",
    "validate",
    "share_pair",
    "flip_once",
    "steady_state_efficiency",
    "closed_form_efficiency",
    "total_flip_time",
    "max_on_resistance",
    "max_stage_count",
    "timing_report",
    "simulate",
    "output_power_closed_form",
    "optimal_storage_voltage",
    "flip_energy_loss",
    "mim_area",
    "bank_area",
    "inductor_comparison",
    "footprint_report",
    # Sweeps
    "SweepAxis",
    "SweepSpec",
    "SweepTable",
    "StageConstraints",
    "run_sweep",
    "best_stage_count",
]

# Conditional imports based on available extras

# CLI extra - typer application and run configuration
try:
    from .cli import RunConfig, app

    __all__.extend(["RunConfig", "app"])
except ImportError:
    pass

# Package metadata
__title__ = "sshc-sim"
__description__ = "Simulation and design-space exploration for SSHC rectifiers"
__license__ = "Apache 2.0"
