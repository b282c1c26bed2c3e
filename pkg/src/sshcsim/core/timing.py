"""Flip timing budget and the ON-resistance / stage-count design rules.

Each phase is given settle_factor time constants of the two-capacitor loop,
tau = R_ON * C_P / 2, so a k-stage flip lasts

    T_F = settle_factor * tau * (2k + 1)

and the design rule requires T_F <= budget_fraction * T / 2.
"""

from __future__ import annotations

import logging
import math

from ..models.api import PiezoSource, SshcConfig, StageCountResult, TimingReport

logger = logging.getLogger(__name__)

DEFAULT_SETTLE_FACTOR = 5.0
DEFAULT_BUDGET_FRACTION = 0.1

# Relative slack when comparing a flip time against its budget, so that a
# resistance computed for exactly k stages is still feasible at k.
FEASIBILITY_RTOL = 1e-9


def _check_budget_fraction(budget_fraction: float) -> None:
    if not 0 < budget_fraction <= 1:
        raise ValueError("budget_fraction must lie in (0, 1]")


def phase_time_constant(r_on: float, c_p: float) -> float:
    """Time constant R_ON * C_P / 2 of the two-capacitor charging loop.

    Raises:
        ValueError: If r_on is negative or c_p is not positive
    """
    if not c_p > 0:
        raise ValueError("c_p must be positive")
    if not r_on >= 0:
        raise ValueError("r_on must be non-negative")
    return r_on * c_p / 2.0


def transfer_fraction(settle_factor: float = DEFAULT_SETTLE_FACTOR) -> float:
    """Share of the final charge moved after settle_factor time constants."""
    if not settle_factor > 0:
        raise ValueError("settle_factor must be positive")
    return -math.expm1(-settle_factor)


def total_flip_time(
    r_on: float,
    c_p: float,
    k: int,
    settle_factor: float = DEFAULT_SETTLE_FACTOR,
) -> float:
    """Duration T_F of the 2k+1 phases.

    Args:
        r_on: Loop ON-resistance in ohms
        c_p: Transducer capacitance in farads
        k: Stage count
        settle_factor: Time constants allotted per phase

    Returns:
        float: Flip time in seconds

    Raises:
        ValueError: If an argument is out of range
    """
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    if not settle_factor > 0:
        raise ValueError("settle_factor must be positive")
    return settle_factor * phase_time_constant(r_on, c_p) * (2 * k + 1)


def max_on_resistance(
    c_p: float,
    period: float,
    k: int,
    budget_fraction: float = DEFAULT_BUDGET_FRACTION,
    settle_factor: float = DEFAULT_SETTLE_FACTOR,
) -> float:
    """Largest loop resistance whose flip fits budget_fraction of the half period.

    Solves settle_factor * (R * c_p / 2) * (2k + 1) = budget_fraction * period / 2.

    Args:
        c_p: Transducer capacitance in farads
        period: Vibration period T in seconds
        k: Stage count
        budget_fraction: Share of T/2 allotted to the flip
        settle_factor: Time constants allotted per phase

    Returns:
        float: Maximum ON-resistance in ohms

    Raises:
        ValueError: If an argument is out of range
    """
    if not c_p > 0:
        raise ValueError("c_p must be positive")
    if not period > 0:
        raise ValueError("period must be positive")
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    if not settle_factor > 0:
        raise ValueError("settle_factor must be positive")
    _check_budget_fraction(budget_fraction)
    return budget_fraction * period / (settle_factor * c_p * (2 * k + 1))


def max_stage_count(
    c_p: float,
    period: float,
    r_on: float,
    budget_fraction: float = DEFAULT_BUDGET_FRACTION,
    settle_factor: float = DEFAULT_SETTLE_FACTOR,
) -> StageCountResult:
    """Largest k whose flip time fits the budget.

    Args:
        c_p: Transducer capacitance in farads
        period: Vibration period T in seconds
        r_on: Loop ON-resistance in ohms
        budget_fraction: Share of T/2 allotted to the flip
        settle_factor: Time constants allotted per phase

    Returns:
        StageCountResult: k_max, or feasible=False when even phi_0 alone
        exceeds the budget

    Raises:
        ValueError: If an argument is out of range
    """
    if not r_on > 0:
        raise ValueError("r_on must be positive")
    if not period > 0:
        raise ValueError("period must be positive")
    if not settle_factor > 0:
        raise ValueError("settle_factor must be positive")
    _check_budget_fraction(budget_fraction)

    budget = budget_fraction * period / 2.0
    t_phase = settle_factor * phase_time_constant(r_on, c_p)
    phases = budget / t_phase * (1.0 + FEASIBILITY_RTOL)

    if phases < 1.0:
        logger.debug(
            f"R_ON={r_on:g} ohm: single phase takes {t_phase:.3e}s, "
            f"budget is {budget:.3e}s"
        )
        return StageCountResult(feasible=False, k_max=None, budget=budget)

    k_max = int(math.floor((phases - 1.0) / 2.0))
    return StageCountResult(
        feasible=True,
        k_max=k_max,
        budget=budget,
        t_flip=total_flip_time(r_on, c_p, k_max, settle_factor),
    )


def timing_report(source: PiezoSource, config: SshcConfig) -> TimingReport:
    """Timing budget of a configuration on a given transducer."""
    tau = phase_time_constant(config.r_on, source.c_p)
    t_flip = total_flip_time(config.r_on, source.c_p, config.k, config.settle_factor)
    return TimingReport(
        tau=tau,
        t_phase=config.settle_factor * tau,
        t_flip=t_flip,
        half_period=source.half_period,
        flip_fraction=t_flip / source.half_period,
        transfer_fraction=transfer_fraction(config.settle_factor),
    )


def fits_budget(t_flip: float, budget: float) -> bool:
    """Whether a flip time is within budget, allowing rounding slack."""
    return t_flip <= budget * (1.0 + FEASIBILITY_RTOL)
