"""Charge-sharing flip solver.

A flip runs the 2k+1 phase schedule on the transducer node and the bank.
Repeating flips in alternating directions converges to the steady state
whose efficiency is the voltage-flip efficiency of the rectifier.
"""

from __future__ import annotations

import logging
import math
from functools import lru_cache

from ..models.api import (
    BankState,
    FlipDirection,
    FlipResult,
    PhaseKind,
    PiezoSource,
    SettlingMode,
    SettlingModel,
    SshcConfig,
)
from .schedule import build_phase_schedule

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-12
DEFAULT_MAX_ITERS = 10_000


def share_pair(
    v_a: float,
    c_a: float,
    v_b: float,
    c_b: float,
    settle: SettlingModel,
    tau: float,
) -> tuple[float, float]:
    """Connect two capacitors through the loop resistance for one phase.

    Args:
        v_a: Voltage of the first capacitor
        c_a: Capacitance of the first capacitor
        v_b: Voltage of the second capacitor
        c_b: Capacitance of the second capacitor
        settle: Settling model; partial mode uses its t_phase
        tau: Loop time constant in seconds (partial mode only)

    Returns:
        tuple: Voltages (v_a', v_b') after the phase

    Raises:
        ValueError: If either capacitance is not positive
    """
    if not (c_a > 0 and c_b > 0):
        raise ValueError("capacitances must be positive")

    c_total = c_a + c_b
    mean = (c_a * v_a + c_b * v_b) / c_total
    if settle.mode is SettlingMode.FULL:
        return mean, mean

    assert settle.t_phase is not None
    decay = math.exp(-settle.t_phase / tau) if tau > 0 else 0.0
    residual = (v_a - v_b) * decay
    return mean + residual * (c_b / c_total), mean - residual * (c_a / c_total)


def _pair_tau(r_on: float, c_a: float, c_b: float) -> float:
    return r_on * c_a * c_b / (c_a + c_b)


@lru_cache(maxsize=256)
def _phase_plan(k: int, direction: FlipDirection) -> tuple[tuple[int, int], ...]:
    """(bank index, connection sign) per phase; index -1 marks phi_0."""
    plan = []
    for phase in build_phase_schedule(k, direction).phases:
        if phase.kind is PhaseKind.ZERO:
            plan.append((-1, 0))
        else:
            assert phase.capacitor is not None
            plan.append((phase.capacitor - 1, phase.polarity.sign))
    return tuple(plan)


def _run_flip(
    v_pt: float,
    bank_v: list[float],
    c_p: float,
    config: SshcConfig,
    settle: SettlingModel,
    direction: FlipDirection,
) -> float:
    """Apply one flip in place on bank_v and return the new node voltage."""
    for index, sign in _phase_plan(config.k, direction):
        if index < 0:
            if settle.mode is SettlingMode.FULL:
                v_pt = 0.0
            else:
                # Single-capacitor discharge through the loop resistance
                assert settle.t_phase is not None
                tau_0 = config.r_on * c_p
                v_pt *= math.exp(-settle.t_phase / tau_0) if tau_0 > 0 else 0.0
            continue

        c_i = config.bank[index]
        v_pt, presented = share_pair(
            v_pt,
            c_p,
            sign * bank_v[index],
            c_i,
            settle,
            _pair_tau(config.r_on, c_p, c_i),
        )
        bank_v[index] = sign * presented
    return v_pt


def flip_once(
    state: BankState,
    source: PiezoSource,
    config: SshcConfig,
    settle: SettlingModel,
    direction: FlipDirection,
) -> BankState:
    """Run the full phase schedule once.

    Args:
        state: Node and bank voltages before the flip
        source: Transducer (supplies C_P)
        config: SSHC configuration
        settle: Settling model
        direction: DOWN for a positive-to-negative flip, UP otherwise

    Returns:
        BankState: Node and bank voltages after the flip

    Raises:
        ValueError: If the state does not match the configuration
    """
    if len(state.bank_v) != config.k:
        raise ValueError(
            f"bank state has {len(state.bank_v)} voltages but k={config.k}"
        )
    bank_v = list(state.bank_v)
    v_pt = _run_flip(state.v_pt, bank_v, source.c_p, config, settle, direction)
    return BankState(v_pt=v_pt, bank_v=tuple(bank_v))


def steady_state_efficiency(
    source: PiezoSource,
    config: SshcConfig,
    settle: SettlingModel | None = None,
    tol: float = DEFAULT_TOLERANCE,
    max_iters: int = DEFAULT_MAX_ITERS,
    v_ref: float = 1.0,
) -> FlipResult:
    """Iterate alternating flips from a cold bank until the efficiency settles.

    Each half cycle the node is recharged to +/- v_ref and flipped in the
    matching direction. Non-convergence is reported through the result.

    Args:
        source: Transducer (supplies C_P)
        config: SSHC configuration
        settle: Settling model (full settling when omitted)
        tol: Relative tolerance on consecutive efficiencies
        max_iters: Maximum number of flips
        v_ref: Magnitude the node is recharged to before each flip

    Returns:
        FlipResult: Converged efficiency, final bank and diagnostics

    Raises:
        ValueError: If tol, max_iters or v_ref are out of range
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    if max_iters < 1:
        raise ValueError("max_iters must be at least 1")
    if not v_ref > 0:
        raise ValueError("v_ref must be positive")
    settle = settle or SettlingModel.full()

    bank_v = [0.0] * config.k
    trajectory: list[float] = []
    direction = FlipDirection.DOWN
    converged = False

    for _ in range(max_iters):
        start = v_ref if direction is FlipDirection.DOWN else -v_ref
        v_after = _run_flip(start, bank_v, source.c_p, config, settle, direction)
        eta = abs(v_after) / v_ref
        trajectory.append(eta)

        if len(trajectory) >= 2:
            delta = abs(eta - trajectory[-2])
            if delta == 0.0 or delta < tol * eta:
                converged = True
                break
        direction = direction.opposite

    if converged:
        logger.debug(
            f"k={config.k} converged to eta={trajectory[-1]:.12f} "
            f"after {len(trajectory)} flips"
        )
    else:
        logger.warning(
            f"k={config.k} did not converge within {max_iters} flips "
            f"(last eta={trajectory[-1]:.12f})"
        )

    return FlipResult(
        efficiency=trajectory[-1],
        steady_bank=BankState(v_pt=v_after, bank_v=tuple(bank_v)),
        iterations=len(trajectory),
        converged=converged,
        trajectory=tuple(trajectory),
    )


def closed_form_efficiency(k: int) -> float:
    """Equal-capacitor, fully settled fixed point k/(k+2).

    Raises:
        ValueError: If k is negative
    """
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    return k / (k + 2)
