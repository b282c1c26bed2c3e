"""Numerical core: phase schedules, flip solver, timing rules, waveforms and area."""

from .flip import (
    closed_form_efficiency,
    flip_once,
    share_pair,
    steady_state_efficiency,
)
from .footprint import (
    REFERENCE_INDUCTANCE_H,
    REFERENCE_INDUCTOR_VOLUME_MM3,
    bank_area,
    footprint_report,
    inductor_comparison,
    mim_area,
)
from .schedule import build_phase_schedule, validate
from .timing import (
    max_on_resistance,
    max_stage_count,
    phase_time_constant,
    timing_report,
    total_flip_time,
    transfer_fraction,
)
from .waveform import (
    flip_energy_loss,
    numeric_storage_optimum,
    optimal_storage_voltage,
    output_power_closed_form,
    simulate,
)

__all__ = [
    "build_phase_schedule",
    "validate",
    "share_pair",
    "flip_once",
    "steady_state_efficiency",
    "closed_form_efficiency",
    "phase_time_constant",
    "transfer_fraction",
    "total_flip_time",
    "max_on_resistance",
    "max_stage_count",
    "timing_report",
    "simulate",
    "output_power_closed_form",
    "optimal_storage_voltage",
    "numeric_storage_optimum",
    "flip_energy_loss",
    "mim_area",
    "bank_area",
    "inductor_comparison",
    "footprint_report",
    "REFERENCE_INDUCTANCE_H",
    "REFERENCE_INDUCTOR_VOLUME_MM3",
]
