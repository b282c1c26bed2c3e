"""sshcsim models - Domain types shared by every analysis."""

from .api import (
    BankState,
    FlipDirection,
    FlipLoss,
    FlipResult,
    FootprintReport,
    InductorComparison,
    PhaseDescriptor,
    PhaseKind,
    PhaseSchedule,
    PiezoSource,
    Polarity,
    PowerResult,
    ProcessParams,
    RectifierKind,
    RectifierModel,
    SettlingMode,
    SettlingModel,
    SshcConfig,
    StageCountResult,
    StorageOptimum,
    TimingReport,
    WaveformTrace,
)

__all__ = [
    # Transducer and bank configuration
    "PiezoSource",
    "SshcConfig",
    "ProcessParams",
    # Flip sequence
    "FlipDirection",
    "PhaseKind",
    "Polarity",
    "PhaseDescriptor",
    "PhaseSchedule",
    "BankState",
    "SettlingMode",
    "SettlingModel",
    "FlipResult",
    # Timing and power
    "TimingReport",
    "StageCountResult",
    "RectifierKind",
    "RectifierModel",
    "PowerResult",
    "StorageOptimum",
    "FlipLoss",
    "WaveformTrace",
    # Footprint
    "InductorComparison",
    "FootprintReport",
]
