"""Grid evaluation and constrained stage-count search."""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from ..core.flip import steady_state_efficiency
from ..core.footprint import bank_area
from ..core.timing import (
    DEFAULT_BUDGET_FRACTION,
    max_on_resistance,
    max_stage_count,
    total_flip_time,
)
from ..core.waveform import optimal_storage_voltage, output_power_closed_form
from ..errors import SweepSpecError
from ..models.api import PiezoSource, ProcessParams, SettlingModel, SshcConfig
from .models import INFEASIBLE, Cell, Objective, Parameter, SweepSpec, SweepTable

logger = logging.getLogger(__name__)


class StageConstraints(BaseModel):
    """Limits a stage count has to satisfy."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    r_on_available: float = Field(..., gt=0, description="Achievable loop resistance")
    area_budget: float = Field(..., ge=0, description="Bank area budget in mm^2")
    budget_fraction: float = Field(
        default=DEFAULT_BUDGET_FRACTION, gt=0, le=1, description="Share of T/2 for T_F"
    )
    settle_factor: float = Field(default=5.0, gt=0, description="Time constants per phase")
    k_limit: int = Field(default=256, ge=0, description="Largest k considered")


class StageSearchReport(BaseModel):
    """Outcome of best_stage_count with the limit each constraint imposes."""

    model_config = ConfigDict(frozen=True)

    feasible: bool = Field(..., description="Whether any k satisfies both constraints")
    k_best: int | None = Field(default=None, description="Largest feasible k")
    k_timing: int | None = Field(
        default=None, description="Largest k the timing allows, within k_limit"
    )
    k_area: int = Field(
        ..., description="Largest k the area budget allows, within k_limit"
    )
    timing_bound: bool = Field(default=False, description="Timing limits k_best")
    area_bound: bool = Field(default=False, description="Area limits k_best")
    limit_bound: bool = Field(default=False, description="k_limit caps k_best")
    t_flip: float | None = Field(default=None, description="Flip time at k_best")
    bank_area_mm2: float | None = Field(default=None, description="Bank area at k_best")
    note: str | None = Field(default=None, description="Explanation when degenerate")


def _point_objectives(
    parameters: dict[Parameter, Any], objectives: tuple[Objective, ...]
) -> list[Cell]:
    source = PiezoSource(
        c_p=parameters[Parameter.C_P],
        f_res=parameters[Parameter.F_RES],
        i_amp=parameters[Parameter.I_AMP],
        v_d=parameters[Parameter.V_D],
    )
    k = parameters[Parameter.K]
    config = SshcConfig.equal_bank(
        k,
        source.c_p,
        r_on=parameters[Parameter.R_ON],
        settle_factor=parameters[Parameter.SETTLE_FACTOR],
    )
    process = ProcessParams(mim_density=parameters[Parameter.MIM_DENSITY])
    budget_fraction = parameters[Parameter.BUDGET_FRACTION]

    eta: float | None = None

    def efficiency() -> float:
        nonlocal eta
        if eta is None:
            eta = steady_state_efficiency(source, config, SettlingModel.full()).efficiency
        return eta

    cells: list[Cell] = []
    for objective in objectives:
        if objective is Objective.FLIP_EFFICIENCY:
            cells.append(efficiency())
        elif objective is Objective.T_FLIP:
            cells.append(
                total_flip_time(config.r_on, source.c_p, k, config.settle_factor)
            )
        elif objective is Objective.MAX_R_ON:
            cells.append(
                max_on_resistance(
                    source.c_p, source.period, k, budget_fraction, config.settle_factor
                )
            )
        elif objective is Objective.P_OUT_AT_OPT_VS:
            cells.append(optimal_storage_voltage(source, efficiency()).p_max)
        elif objective is Objective.P_OUT:
            cells.append(
                output_power_closed_form(source, efficiency(), parameters[Parameter.V_S])
            )
        elif objective is Objective.BANK_AREA:
            cells.append(bank_area(config, process))
        elif objective is Objective.MAX_STAGE_COUNT:
            if config.r_on <= 0:
                cells.append(INFEASIBLE)
                continue
            found = max_stage_count(
                source.c_p, source.period, config.r_on, budget_fraction, config.settle_factor
            )
            cells.append(INFEASIBLE if found.k_max is None else found.k_max)
    return cells


def _evaluate(spec: SweepSpec, point: tuple[float | int, ...]) -> tuple[Cell, ...]:
    parameters = spec.point_parameters(point)
    try:
        cells = _point_objectives(parameters, spec.objectives)
    except (ValidationError, ValueError) as e:
        logger.warning(f"Point {point} is infeasible: {e}")
        cells = [INFEASIBLE] * len(spec.objectives)
    return (*point, *cells)


def run_sweep(spec: SweepSpec, workers: int = 1) -> SweepTable:
    """Evaluate every grid point of a sweep.

    Rows follow the lexicographic order of the axes whatever the number of
    workers; points whose inputs violate an invariant carry the infeasible
    marker in every objective column.

    Args:
        spec: Sweep specification
        workers: Threads used to evaluate points

    Returns:
        SweepTable: One row per grid point

    Raises:
        SweepSpecError: If the grid is empty or workers is not positive
    """
    if workers < 1:
        raise SweepSpecError("workers must be at least 1")
    grids = [axis.values() for axis in spec.axes]
    points = list(itertools.product(*grids))
    if not points:
        raise SweepSpecError("sweep grid is empty")

    logger.info(
        f"Sweeping {len(points)} points over "
        f"{', '.join(axis.name.value for axis in spec.axes)} with {workers} worker(s)"
    )
    if workers == 1:
        rows = [_evaluate(spec, point) for point in points]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda point: _evaluate(spec, point), points))

    columns = (
        *(axis.name.value for axis in spec.axes),
        *(objective.value for objective in spec.objectives),
    )
    return SweepTable(columns=columns, rows=tuple(rows))


def best_stage_count(
    constraints: StageConstraints,
    source: PiezoSource,
    process: ProcessParams | None = None,
) -> StageSearchReport:
    """Largest equal-bank k meeting both the flip-time and the area budget.

    Args:
        constraints: Available resistance, area budget and timing share
        source: Transducer (bank capacitors equal C_P)
        process: MIM process constants

    Returns:
        StageSearchReport: k_best with the binding constraint, or
        feasible=False when not even k=0 fits the timing budget
    """
    process = process or ProcessParams()
    timing = max_stage_count(
        source.c_p,
        source.period,
        constraints.r_on_available,
        constraints.budget_fraction,
        constraints.settle_factor,
    )

    unit_area = bank_area(SshcConfig.equal_bank(1, source.c_p), process)

    def fits_area(k: int) -> bool:
        area = bank_area(SshcConfig.equal_bank(k, source.c_p), process)
        return area <= constraints.area_budget * (1.0 + 1e-12)

    k_area = 0
    while k_area < constraints.k_limit and fits_area(k_area + 1):
        k_area += 1

    if not timing.feasible or timing.k_max is None:
        logger.warning(
            f"No stage count fits: one phase at R_ON={constraints.r_on_available:g} ohm "
            f"exceeds the {timing.budget:.3e}s flip budget"
        )
        return StageSearchReport(
            feasible=False,
            k_area=k_area,
            note="even the clearing phase alone exceeds the flip-time budget",
        )

    k_timing = min(timing.k_max, constraints.k_limit)
    k_best = min(k_timing, k_area)
    config = SshcConfig.equal_bank(
        k_best, source.c_p, constraints.r_on_available, constraints.settle_factor
    )
    t_flip = total_flip_time(
        config.r_on, source.c_p, k_best, constraints.settle_factor
    )
    area = bank_area(config, process)

    # Flags compare against the uncapped limits; k_limit only bounds the search.
    timing_bound = k_best == timing.k_max
    area_bound = not fits_area(k_best + 1)
    limit_bound = k_best == constraints.k_limit

    note = None
    if k_best == 0 and k_area == 0:
        note = (
            f"area budget {constraints.area_budget:g} mm^2 is below one "
            f"{unit_area:.4g} mm^2 capacitor; zero-bank rectifier only"
        )
    elif limit_bound and not (timing_bound or area_bound):
        note = (
            f"k_limit {constraints.k_limit} caps the search; "
            "timing and area allow more stages"
        )
        logger.info(note)
    return StageSearchReport(
        feasible=True,
        k_best=k_best,
        k_timing=k_timing,
        k_area=k_area,
        timing_bound=timing_bound,
        area_bound=area_bound,
        limit_bound=limit_bound,
        t_flip=t_flip,
        bank_area_mm2=area,
        note=note,
    )
