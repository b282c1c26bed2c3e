"""Design-space sweeps and constrained stage-count search."""

from .engine import (
    StageConstraints,
    StageSearchReport,
    best_stage_count,
    run_sweep,
)
from .models import (
    INFEASIBLE,
    Objective,
    Parameter,
    Spacing,
    SweepAxis,
    SweepSpec,
    SweepTable,
)

__all__ = [
    "INFEASIBLE",
    "Objective",
    "Parameter",
    "Spacing",
    "SweepAxis",
    "SweepSpec",
    "SweepTable",
    "StageConstraints",
    "StageSearchReport",
    "run_sweep",
    "best_stage_count",
]
