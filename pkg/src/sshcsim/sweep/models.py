"""Sweep grid definitions and result table models."""

from __future__ import annotations

from enum import Enum
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

INFEASIBLE = "infeasible"


class Spacing(str, Enum):
    """How axis values are distributed between min and max."""

    LINEAR = "linear"
    LOG = "log"


class Objective(str, Enum):
    """Quantities a sweep can tabulate."""

    FLIP_EFFICIENCY = "flip_efficiency"
    T_FLIP = "t_flip"
    MAX_R_ON = "max_r_on"
    P_OUT_AT_OPT_VS = "p_out_at_opt_vs"
    P_OUT = "p_out"
    BANK_AREA = "bank_area"
    MAX_STAGE_COUNT = "max_stage_count"


class Parameter(str, Enum):
    """Parameters an axis may vary or the fixed section may set."""

    K = "k"
    C_P = "c_p"
    F_RES = "f_res"
    R_ON = "r_on"
    V_S = "v_s"
    I_AMP = "i_amp"
    V_D = "v_d"
    SETTLE_FACTOR = "settle_factor"
    BUDGET_FRACTION = "budget_fraction"
    MIM_DENSITY = "mim_density"


DEFAULT_PARAMETERS: dict[Parameter, float] = {
    Parameter.K: 8,
    Parameter.C_P: 100e-12,
    Parameter.F_RES: 100e3,
    Parameter.R_ON: 100.0,
    Parameter.V_S: 0.5,
    Parameter.I_AMP: 10e-6,
    Parameter.V_D: 0.0,
    Parameter.SETTLE_FACTOR: 5.0,
    Parameter.BUDGET_FRACTION: 0.1,
    Parameter.MIM_DENSITY: 2.0,
}


class SweepAxis(BaseModel):
    """One swept parameter."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    name: Parameter = Field(..., description="Parameter to vary")
    min: float = Field(..., description="First value")
    max: float = Field(..., description="Last value")
    steps: int = Field(default=1, description="Number of grid values")
    spacing: Spacing = Field(default=Spacing.LINEAR, description="linear or log")

    @field_validator("steps")
    @classmethod
    def validate_steps(cls, v: int) -> int:
        if v < 1:
            raise ValueError("steps must be at least 1")
        return v

    @model_validator(mode="after")
    def validate_range(self) -> SweepAxis:
        if self.min > self.max:
            raise ValueError(f"axis {self.name.value}: min must not exceed max")
        if self.spacing is Spacing.LOG and self.min <= 0:
            raise ValueError(f"axis {self.name.value}: log spacing needs min > 0")
        if self.name is Parameter.K and len(set(self.values())) < self.steps:
            raise ValueError(
                f"axis k: {self.steps} steps between {self.min:g} and {self.max:g} "
                "repeat a stage count after rounding"
            )
        return self

    def values(self) -> list[float | int]:
        if self.steps == 1:
            raw = np.array([self.min])
        elif self.spacing is Spacing.LOG:
            raw = np.geomspace(self.min, self.max, self.steps)
        else:
            raw = np.linspace(self.min, self.max, self.steps)
        if self.name is Parameter.K:
            return [int(round(x)) for x in raw]
        return [float(x) for x in raw]


class SweepSpec(BaseModel):
    """Grid axes, fixed parameters and the objectives to tabulate."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    axes: tuple[SweepAxis, ...] = Field(..., description="Swept parameters in order")
    fixed: dict[Parameter, float] = Field(
        default_factory=dict, description="Values for parameters not swept"
    )
    objectives: tuple[Objective, ...] = Field(
        default=(Objective.FLIP_EFFICIENCY,), description="Columns to compute"
    )

    @model_validator(mode="after")
    def validate_axes(self) -> SweepSpec:
        if not self.axes:
            raise ValueError("sweep needs at least one axis")
        names = [axis.name for axis in self.axes]
        for name in names:
            if names.count(name) > 1:
                raise ValueError(f"duplicate axis name: {name.value}")
        if not self.objectives:
            raise ValueError("sweep needs at least one objective")
        return self

    @property
    def grid_size(self) -> int:
        size = 1
        for axis in self.axes:
            size *= axis.steps
        return size

    def point_parameters(self, point: tuple[float | int, ...]) -> dict[Parameter, Any]:
        parameters: dict[Parameter, Any] = dict(DEFAULT_PARAMETERS)
        parameters.update(self.fixed)
        parameters.update(
            {axis.name: value for axis, value in zip(self.axes, point, strict=True)}
        )
        parameters[Parameter.K] = int(round(parameters[Parameter.K]))
        return parameters


Cell = float | int | str


class SweepTable(BaseModel):
    """Rows of a sweep in lexicographic axis order."""

    model_config = ConfigDict(frozen=True)

    columns: tuple[str, ...] = Field(..., description="Axis names then objectives")
    rows: tuple[tuple[Cell, ...], ...] = Field(..., description="One row per point")

    def __len__(self) -> int:
        return len(self.rows)

    def column(self, name: str) -> list[Cell]:
        index = self.columns.index(name)
        return [row[index] for row in self.rows]

    def records(self) -> list[dict[str, Cell]]:
        return [dict(zip(self.columns, row, strict=True)) for row in self.rows]
