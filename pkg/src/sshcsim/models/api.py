"""Core domain models for SSHC rectifier analysis.

All quantities are plain SI floats (farads, hertz, ohms, volts, seconds,
watts, coulombs); field names carry the unit where it is not obvious.
"""

from __future__ import annotations

import math
from collections.abc import Iterator
from enum import Enum
from typing import Any, ClassVar

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class FlipDirection(str, Enum):
    """Direction of a voltage flip on the transducer node."""

    DOWN = "down"
    UP = "up"

    @property
    def opposite(self) -> FlipDirection:
        return FlipDirection.UP if self is FlipDirection.DOWN else FlipDirection.DOWN


class PhaseKind(str, Enum):
    """Role of a phase in the flip sequence."""

    P = "p"
    ZERO = "0"
    N = "n"


class Polarity(str, Enum):
    """How a bank capacitor is connected across the transducer."""

    SAME = "same"
    REVERSED = "reversed"
    GROUND = "ground"

    @property
    def sign(self) -> int:
        return {"same": 1, "reversed": -1, "ground": 0}[self.value]

    @property
    def negated(self) -> Polarity:
        if self is Polarity.SAME:
            return Polarity.REVERSED
        if self is Polarity.REVERSED:
            return Polarity.SAME
        return self


class SettlingMode(str, Enum):
    """Whether each phase settles completely or for a finite time."""

    FULL = "full"
    PARTIAL = "partial"


class RectifierKind(str, Enum):
    """Rectifier topologies the waveform simulator understands."""

    FBR = "fbr"
    SSHC = "sshc"
    SSHI_BASELINE = "sshi-baseline"


class PiezoSource(BaseModel):
    """Piezoelectric transducer as a sinusoidal current source with C_P in parallel."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    c_p: float = Field(default=100e-12, description="Inherent capacitance C_P in farads")
    f_res: float = Field(default=100e3, description="Resonant frequency in hertz")
    i_amp: float = Field(default=10e-6, description="Peak source current in amperes")
    v_d: float = Field(default=0.0, description="Diode forward drop V_D in volts")

    @field_validator("c_p")
    @classmethod
    def validate_c_p(cls, v: float) -> float:
        if not v > 0:
            raise ValueError("c_p must be positive")
        return v

    @field_validator("f_res")
    @classmethod
    def validate_f_res(cls, v: float) -> float:
        if not v > 0:
            raise ValueError("f_res must be positive")
        return v

    @field_validator("i_amp")
    @classmethod
    def validate_i_amp(cls, v: float) -> float:
        if not v > 0:
            raise ValueError("i_amp must be positive")
        return v

    @field_validator("v_d")
    @classmethod
    def validate_v_d(cls, v: float) -> float:
        if not v >= 0:
            raise ValueError("v_d must be non-negative")
        return v

    @property
    def period(self) -> float:
        """Vibration period T in seconds."""
        return 1.0 / self.f_res

    @property
    def half_period(self) -> float:
        return 0.5 / self.f_res

    @property
    def omega(self) -> float:
        return 2.0 * math.pi * self.f_res

    @property
    def q_half(self) -> float:
        """Source charge per half cycle, the integral of |I_P| over T/2."""
        return self.i_amp * self.period / math.pi

    def clamp_voltage(self, v_s: float) -> float:
        """Bridge clamp level V_S + 2 V_D."""
        return v_s + 2.0 * self.v_d

    def current(self, t: Any) -> Any:
        """I_P at time t (scalar or array)."""
        return self.i_amp * np.sin(self.omega * np.asarray(t))

    @classmethod
    def ultrasonic_receiver(cls) -> PiezoSource:
        """Sub-mm ultrasonic receiver: 100 pF at 100 kHz."""
        return cls(c_p=100e-12, f_res=100e3, i_amp=10e-6, v_d=0.0)

    @classmethod
    def vibration_harvester(cls) -> PiezoSource:
        """Low-frequency vibration harvester with nF-scale capacitance."""
        return cls(c_p=10e-9, f_res=200.0, i_amp=10e-6, v_d=0.0)


class SshcConfig(BaseModel):
    """Stage count, capacitor bank, loop resistance and settling policy."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    k: int = Field(..., description="Stage count (number of bank capacitors)")
    bank: tuple[float, ...] = Field(
        default=(), description="Bank capacitances C_1..C_k in farads"
    )
    r_on: float = Field(default=0.0, description="Loop ON-resistance in ohms")
    settle_factor: float = Field(
        default=5.0, description="Multiple of tau allotted to each phase"
    )

    @field_validator("k")
    @classmethod
    def validate_k(cls, v: int) -> int:
        if v < 0:
            raise ValueError("k must be non-negative")
        return v

    @field_validator("bank")
    @classmethod
    def validate_bank(cls, v: tuple[float, ...]) -> tuple[float, ...]:
        for index, c in enumerate(v, start=1):
            if not c > 0:
                raise ValueError(f"bank capacitance C_{index} must be positive")
        return v

    @field_validator("r_on")
    @classmethod
    def validate_r_on(cls, v: float) -> float:
        if not v >= 0:
            raise ValueError("r_on must be non-negative")
        return v

    @field_validator("settle_factor")
    @classmethod
    def validate_settle_factor(cls, v: float) -> float:
        if not v > 0:
            raise ValueError("settle_factor must be positive")
        return v

    @model_validator(mode="after")
    def validate_bank_length(self) -> SshcConfig:
        if len(self.bank) != self.k:
            raise ValueError(
                f"bank length mismatch: k={self.k} but {len(self.bank)} capacitances given"
            )
        return self

    @classmethod
    def equal_bank(
        cls, k: int, c: float, r_on: float = 0.0, settle_factor: float = 5.0
    ) -> SshcConfig:
        """Bank of k capacitors all equal to c (normally C_P)."""
        return cls(k=k, bank=(c,) * k, r_on=r_on, settle_factor=settle_factor)

    @property
    def phase_count(self) -> int:
        return 2 * self.k + 1

    @property
    def total_capacitance(self) -> float:
        return math.fsum(self.bank)


class PhaseDescriptor(BaseModel):
    """One phase of the flip sequence."""

    model_config = ConfigDict(frozen=True)

    name: str = Field(..., description="Phase label, e.g. 'phi_3p' or 'phi_0'")
    kind: PhaseKind = Field(..., description="p-phase, clearing phase or n-phase")
    capacitor: int | None = Field(
        default=None, description="1-based bank index; None for phi_0"
    )
    polarity: Polarity = Field(..., description="Connection polarity")


class PhaseSchedule(BaseModel):
    """Ordered 2k+1 phase sequence for one flip direction."""

    model_config = ConfigDict(frozen=True)

    k: int = Field(..., description="Stage count")
    direction: FlipDirection = Field(
        default=FlipDirection.DOWN, description="Flip direction this schedule serves"
    )
    phases: tuple[PhaseDescriptor, ...] = Field(..., description="Phases in order")

    @model_validator(mode="after")
    def validate_length(self) -> PhaseSchedule:
        if len(self.phases) != 2 * self.k + 1:
            raise ValueError(
                f"schedule for k={self.k} must have {2 * self.k + 1} phases"
            )
        return self

    def __len__(self) -> int:
        return len(self.phases)

    @property
    def names(self) -> list[str]:
        return [phase.name for phase in self.phases]

    @property
    def switch_count(self) -> int:
        """Switches the schedule drives: two per terminal pair plus the short."""
        return 4 * self.k + 1

    def mirrored(self) -> PhaseSchedule:
        """Same sequence with every connection polarity negated."""
        return PhaseSchedule(
            k=self.k,
            direction=self.direction.opposite,
            phases=tuple(
                phase.model_copy(update={"polarity": phase.polarity.negated})
                for phase in self.phases
            ),
        )


class BankState(BaseModel):
    """Voltage of the transducer node and of every bank capacitor.

    Bank voltages are held in each capacitor's fixed physical orientation,
    i.e. the voltage it presents to the PT node through a same-polarity
    connection.
    """

    model_config = ConfigDict(frozen=True)

    v_pt: float = Field(default=0.0, description="Transducer node voltage V_PT")
    bank_v: tuple[float, ...] = Field(
        default=(), description="Bank capacitor voltages"
    )

    @classmethod
    def cold(cls, k: int, v_pt: float = 0.0) -> BankState:
        """All bank capacitors discharged."""
        return cls(v_pt=v_pt, bank_v=(0.0,) * k)

    def presented(self, direction: FlipDirection) -> tuple[float, ...]:
        """Bank voltages seen through the p-phase connection of a direction."""
        sign = 1.0 if direction is FlipDirection.DOWN else -1.0
        return tuple(sign * v for v in self.bank_v)


class SettlingModel(BaseModel):
    """Per-phase settling assumption."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    mode: SettlingMode = Field(default=SettlingMode.FULL, description="full or partial")
    t_phase: float | None = Field(
        default=None, description="Time per phase in seconds (partial mode only)"
    )

    @model_validator(mode="after")
    def validate_t_phase(self) -> SettlingModel:
        if self.mode is SettlingMode.PARTIAL and (
            self.t_phase is None or not self.t_phase > 0
        ):
            raise ValueError("t_phase must be positive in partial settling mode")
        return self

    @classmethod
    def full(cls) -> SettlingModel:
        return cls(mode=SettlingMode.FULL)

    @classmethod
    def partial(cls, t_phase: float) -> SettlingModel:
        return cls(mode=SettlingMode.PARTIAL, t_phase=t_phase)


class FlipResult(BaseModel):
    """Steady-state voltage-flip efficiency and how it was reached."""

    model_config = ConfigDict(frozen=True)

    efficiency: float = Field(..., description="|V_PT after| / |V_PT before|")
    steady_bank: BankState = Field(..., description="Bank state after the last flip")
    iterations: int = Field(..., description="Flip cycles executed")
    converged: bool = Field(..., description="Whether the tolerance was met")
    trajectory: tuple[float, ...] = Field(
        default=(), description="Efficiency of every executed flip"
    )

    @field_validator("efficiency")
    @classmethod
    def validate_efficiency(cls, v: float) -> float:
        if not 0.0 <= v < 1.0:
            raise ValueError("efficiency must lie in [0, 1)")
        return v


class TimingReport(BaseModel):
    """Timing budget of one flip."""

    model_config = ConfigDict(frozen=True)

    tau: float = Field(..., description="Pair-sharing time constant in seconds")
    t_phase: float = Field(..., description="Time per phase in seconds")
    t_flip: float = Field(..., description="Total flip time T_F in seconds")
    half_period: float = Field(..., description="T/2 in seconds")
    flip_fraction: float = Field(..., description="T_F / (T/2)")
    transfer_fraction: float = Field(
        ..., description="Charge transferred per phase, 1 - exp(-settle_factor)"
    )


class StageCountResult(BaseModel):
    """Largest stage count that fits a timing budget."""

    model_config = ConfigDict(frozen=True)

    feasible: bool = Field(..., description="False when even k=0 exceeds the budget")
    k_max: int | None = Field(default=None, description="Largest feasible k")
    budget: float = Field(..., description="Allowed flip time in seconds")
    t_flip: float | None = Field(
        default=None, description="Flip time at k_max in seconds"
    )


class RectifierModel(BaseModel):
    """Rectifier driving the transducer in the waveform simulation."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: RectifierKind = Field(default=RectifierKind.SSHC, description="Topology")
    flip_efficiency: float = Field(
        default=0.0, description="Voltage flip efficiency (ignored for FBR)"
    )
    flip_duration: float = Field(default=0.0, description="Flip time T_F in seconds")

    @model_validator(mode="after")
    def validate_flip(self) -> RectifierModel:
        if self.kind is not RectifierKind.FBR:
            if not 0.0 <= self.flip_efficiency < 1.0:
                raise ValueError("flip_efficiency must lie in [0, 1)")
            if not self.flip_duration >= 0:
                raise ValueError("flip_duration must be non-negative")
        return self

    @property
    def effective_eta(self) -> float:
        """Flip ratio used by the dynamics; -1 means the voltage is left alone."""
        return -1.0 if self.kind is RectifierKind.FBR else self.flip_efficiency

    @property
    def effective_flip_duration(self) -> float:
        return 0.0 if self.kind is RectifierKind.FBR else self.flip_duration

    @classmethod
    def fbr(cls) -> RectifierModel:
        return cls(kind=RectifierKind.FBR, flip_efficiency=0.0, flip_duration=0.0)


class PowerResult(BaseModel):
    """Per-half-cycle charge accounting of the final simulated cycle."""

    model_config = ConfigDict(frozen=True)

    p_out: float = Field(..., description="Output power in watts")
    v_s: float = Field(..., description="Storage voltage V_S in volts")
    q_half: float = Field(..., description="Source charge per half cycle")
    q_reflip: float = Field(..., description="Charge spent recharging C_P")
    q_flip_waste: float = Field(..., description="Source charge lost during T_F")
    q_out: float = Field(..., description="Charge delivered to storage")


class StorageOptimum(BaseModel):
    """Storage voltage maximising the closed-form output power."""

    model_config = ConfigDict(frozen=True)

    v_s_opt: float = Field(..., description="Optimal V_S in volts (inf if unbounded)")
    p_max: float = Field(..., description="Power at the optimum in watts")
    unbounded: bool = Field(
        default=False, description="True when the lossless model has no finite optimum"
    )


class FlipLoss(BaseModel):
    """Source charge lost while the flip network holds the node."""

    model_config = ConfigDict(frozen=True)

    q_flip_waste: float = Field(..., description="Charge lost per half cycle")
    fraction_of_q_half: float = Field(..., description="q_flip_waste / q_half")


class ProcessParams(BaseModel):
    """CMOS process constants used for area estimates."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    mim_density: float = Field(
        default=2.0, description="MIM capacitance density in fF/um^2"
    )

    @field_validator("mim_density")
    @classmethod
    def validate_density(cls, v: float) -> float:
        if not v > 0:
            raise ValueError("mim_density must be positive")
        return v


class InductorComparison(BaseModel):
    """On-chip bank volume against the reference SSHI inductor."""

    model_config = ConfigDict(frozen=True)

    bank_volume_mm3: float = Field(..., description="Bank area times chip thickness")
    inductor_volume_mm3: float = Field(..., description="Reference inductor volume")
    ratio: float = Field(..., description="Inductor over bank volume (inf if empty)")

    @property
    def bank_under_one_mm3(self) -> bool:
        return self.bank_volume_mm3 < 1.0


class FootprintReport(BaseModel):
    """Area and volume summary of one bank."""

    model_config = ConfigDict(frozen=True)

    k: int = Field(..., description="Stage count")
    total_capacitance: float = Field(..., description="Sum of bank capacitances")
    bank_area_mm2: float = Field(..., description="MIM area of the bank")
    comparison: InductorComparison = Field(..., description="Inductor comparison")
    area_budget_mm2: float | None = Field(default=None, description="Area budget")

    @property
    def within_budget(self) -> bool:
        return self.area_budget_mm2 is None or self.bank_area_mm2 <= self.area_budget_mm2


class WaveformTrace(BaseModel):
    """Sampled I_P and V_PT of a simulation run on a fixed time grid."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    t: np.ndarray = Field(..., description="Sample times in seconds")
    i_p: np.ndarray = Field(..., description="Source current in amperes")
    v_pt: np.ndarray = Field(..., description="Transducer voltage in volts")
    period: float = Field(..., description="Vibration period T in seconds")
    flip_duration: float = Field(..., description="Flip time T_F in seconds")
    n_cycles: int = Field(..., description="Simulated periods")

    COLUMNS: ClassVar[tuple[str, str, str]] = ("t_seconds", "i_p_amperes", "v_pt_volts")

    def __len__(self) -> int:
        return int(self.t.size)

    def rows(self) -> Iterator[tuple[float, float, float]]:
        for t, i, v in zip(self.t, self.i_p, self.v_pt, strict=True):
            yield float(t), float(i), float(v)
