"""JSON run configuration for the sshc command line."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ..core.timing import DEFAULT_BUDGET_FRACTION, DEFAULT_SETTLE_FACTOR, max_on_resistance
from ..errors import ConfigurationError
from ..models.api import (
    PiezoSource,
    ProcessParams,
    RectifierKind,
    SettlingModel,
    SshcConfig,
)
from ..sweep.models import SweepSpec

logger = logging.getLogger(__name__)


class SshcSection(BaseModel):
    """Stage count, bank and design-rule parameters."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    k: int = Field(default=8, description="Stage count")
    bank: tuple[float, ...] | None = Field(
        default=None, description="Bank capacitances; omitted means k x C_P"
    )
    r_on: float | None = Field(
        default=None, description="Loop ON-resistance; omitted means the design limit"
    )
    settle_factor: float = Field(
        default=DEFAULT_SETTLE_FACTOR, description="Time constants per phase"
    )
    budget_fraction: float = Field(
        default=DEFAULT_BUDGET_FRACTION, gt=0, le=1, description="Share of T/2 for T_F"
    )


class FootprintSection(BaseModel):
    """Chip geometry used by the area report."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    chip_thickness: float = Field(default=0.3, gt=0, description="Die thickness in mm")
    area_budget: float | None = Field(
        default=None, ge=0, description="Bank area budget in mm^2"
    )


class EfficiencySection(BaseModel):
    """Stage-count range of the efficiency table."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    k_min: int = Field(default=1, ge=0, description="First stage count")
    k_max: int = Field(default=8, ge=0, description="Last stage count")
    tol: float = Field(default=1e-12, gt=0, description="Convergence tolerance")

    @model_validator(mode="after")
    def validate_range(self) -> EfficiencySection:
        if self.k_min > self.k_max:
            raise ValueError("k_min must not exceed k_max")
        return self


class SimulationSection(BaseModel):
    """Waveform simulation options."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    rectifier: RectifierKind = Field(default=RectifierKind.SSHC, description="Topology")
    flip_efficiency: float | None = Field(
        default=None,
        description="Flip efficiency; omitted means the solver value for SSHC",
    )
    v_s: float | Literal["auto"] = Field(
        default="auto", description="Storage voltage, or auto for the optimum"
    )
    flip_duration: float | Literal["auto"] = Field(
        default="auto", description="Flip time, or auto for the SSHC T_F"
    )
    n_cycles: int = Field(default=5, ge=1, description="Simulated periods")
    steps_per_period: int = Field(default=2000, ge=1000, description="Steps per period")

    @model_validator(mode="after")
    def validate_baseline(self) -> SimulationSection:
        if self.rectifier is RectifierKind.SSHI_BASELINE and self.flip_efficiency is None:
            raise ValueError("sshi-baseline needs an explicit flip_efficiency")
        if isinstance(self.v_s, float) and not self.v_s >= 0:
            raise ValueError("v_s must be non-negative")
        if isinstance(self.flip_duration, float) and not self.flip_duration >= 0:
            raise ValueError("flip_duration must be non-negative")
        return self


class RunConfig(BaseModel):
    """Every input of every subcommand, with the ultrasonic receiver defaults.

    The default source current of 10 uA is an arbitrary choice: only the
    capacitance and the frequency of the receiver are fixed by the design.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    source: PiezoSource = Field(default_factory=PiezoSource, description="Transducer")
    sshc: SshcSection = Field(default_factory=SshcSection, description="SSHC design")
    process: ProcessParams = Field(default_factory=ProcessParams, description="Process")
    footprint: FootprintSection = Field(
        default_factory=FootprintSection, description="Area report"
    )
    settling: SettlingModel = Field(
        default_factory=SettlingModel, description="Per-phase settling"
    )
    efficiency: EfficiencySection = Field(
        default_factory=EfficiencySection, description="Efficiency table"
    )
    simulation: SimulationSection = Field(
        default_factory=SimulationSection, description="Waveform simulation"
    )
    sweep: SweepSpec | None = Field(default=None, description="Design-space sweep")
    workers: int = Field(default=1, ge=1, description="Sweep worker threads")

    @model_validator(mode="after")
    def validate_design(self) -> RunConfig:
        try:
            self.sshc_config()
        except ValidationError as e:
            raise ValueError(str(ConfigurationError.from_validation_error(e))) from e
        return self

    def design_limit(self, k: int | None = None) -> float:
        """Largest R_ON meeting the flip budget at k (the configured k by default)."""
        return max_on_resistance(
            self.source.c_p,
            self.source.period,
            self.sshc.k if k is None else k,
            self.sshc.budget_fraction,
            self.sshc.settle_factor,
        )

    def sshc_config(self, k: int | None = None) -> SshcConfig:
        """SshcConfig of the configured design, optionally at another equal-bank k."""
        k = self.sshc.k if k is None else k
        if k < 0:
            raise ValueError(f"k must be non-negative, got {k}")
        r_on = self.sshc.r_on if self.sshc.r_on is not None else self.design_limit(k)
        if self.sshc.bank is not None and k == self.sshc.k:
            bank = self.sshc.bank
        else:
            bank = (self.source.c_p,) * k
        return SshcConfig(
            k=k, bank=bank, r_on=r_on, settle_factor=self.sshc.settle_factor
        )


def load_config(path: Path | None) -> RunConfig:
    """Read a RunConfig from a JSON file, or the defaults when path is None.

    Raises:
        ConfigurationError: If the file cannot be read or fails validation
    """
    if path is None:
        return RunConfig()
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigurationError([f"cannot read config {path}: {e.strerror}"], e) from e

    try:
        config = RunConfig.model_validate_json(text)
    except ValidationError as e:
        raise ConfigurationError.from_validation_error(e) from e
    logger.debug(f"Loaded run configuration from {path}")
    return config
