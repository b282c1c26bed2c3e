"""Half-cycle time-domain simulation of the transducer and rectifier.

The transducer is a sinusoidal current source I_P = i_amp sin(2 pi f t)
charging C_P. An ideal bridge clamps V_PT at +/-(V_S + 2 V_D) and passes the
excess charge to storage. At every current zero crossing the flip network
takes the node for T_F (centred on the crossing), discards the source charge
flowing meanwhile and leaves V_PT at -eta times its value before the flip.
"""

from __future__ import annotations

import logging
import math

import numpy as np
from scipy import integrate, optimize

from ..errors import TraceError
from ..models.api import (
    FlipLoss,
    PiezoSource,
    PowerResult,
    RectifierKind,
    RectifierModel,
    StorageOptimum,
    WaveformTrace,
)

logger = logging.getLogger(__name__)

DEFAULT_STEPS_PER_PERIOD = 2000
DEFAULT_CYCLES = 5
MIN_STEPS_PER_PERIOD = 1000

# Event times closer than this fraction of a step are merged.
_EVENT_MERGE_FRACTION = 1e-9


def _event_times(
    t_end: float, dt: float, half: float, n_half: int, t_f: float
) -> np.ndarray:
    """Fixed grid plus every crossing and flip boundary, merged and sorted."""
    grid = np.linspace(0.0, t_end, int(round(t_end / dt)) + 1)
    crossings = np.arange(n_half + 1) * half
    points = [grid, crossings]
    if t_f > 0:
        points += [crossings - t_f / 2.0, crossings + t_f / 2.0]
    events = np.unique(np.clip(np.concatenate(points), 0.0, t_end))
    keep = np.concatenate(([True], np.diff(events) > dt * _EVENT_MERGE_FRACTION))
    return events[keep]


def simulate(
    source: PiezoSource,
    model: RectifierModel,
    v_s: float,
    n_cycles: int = DEFAULT_CYCLES,
    steps_per_period: int = DEFAULT_STEPS_PER_PERIOD,
) -> tuple[WaveformTrace, PowerResult]:
    """Simulate n_cycles periods and account the charge of the last one.

    Args:
        source: Transducer model
        model: Rectifier (FBR, SSHC or SSHI baseline)
        v_s: Storage voltage in volts
        n_cycles: Number of simulated periods
        steps_per_period: Fixed sampling steps per period (at least 1000)

    Returns:
        tuple: (trace sampled on the fixed grid, per-half-cycle PowerResult of
        the final cycle)

    Raises:
        ValueError: If an argument is out of range
    """
    if not v_s >= 0:
        raise ValueError("v_s must be non-negative")
    if n_cycles < 1:
        raise ValueError("n_cycles must be at least 1")
    if steps_per_period < MIN_STEPS_PER_PERIOD:
        raise ValueError(f"steps_per_period must be at least {MIN_STEPS_PER_PERIOD}")

    period = source.period
    half = source.half_period
    t_f = model.effective_flip_duration
    if t_f > half * (1.0 + 1e-12):
        raise ValueError("flip_duration cannot exceed half the period")
    t_f = min(t_f, half)
    flips = model.kind is not RectifierKind.FBR
    eta = model.effective_eta
    c_p = source.c_p
    v_clamp = source.clamp_voltage(v_s)

    dt = period / steps_per_period
    if t_f <= dt * _EVENT_MERGE_FRACTION:
        # Boundaries this close to the crossing merge away; flip instantly.
        t_f = 0.0
    t_end = n_cycles * period
    events = _event_times(t_end, dt, half, 2 * n_cycles, t_f)
    cosines = np.cos(source.omega * events)
    charges = (source.i_amp / source.omega) * (cosines[:-1] - cosines[1:])
    mids = 0.5 * (events[:-1] + events[1:])
    nearest = np.rint(mids / half).astype(int)
    in_flip = flips & (np.abs(mids - nearest * half) < t_f / 2.0)

    grid = np.linspace(0.0, t_end, int(round(t_end / dt)) + 1)
    sample_at = np.searchsorted(events, grid - dt * _EVENT_MERGE_FRACTION).tolist()
    v_samples = np.empty_like(grid)
    n_samples = grid.size
    window_start = t_end - period - dt * _EVENT_MERGE_FRACTION

    v = 0.0
    v_pre = 0.0
    flip_start = 0.0
    active_flip: int | None = None
    last_instant_flip = 0
    q_source = q_waste = q_out = 0.0
    sample = 0

    def ramp(t: float) -> float:
        progress = min(max((t - flip_start) / t_f, 0.0), 1.0)
        return v_pre + (-eta * v_pre - v_pre) * progress

    starts = events[:-1].tolist()
    flip_ids = np.where(in_flip, nearest, -1).tolist()
    for index, (a, dq, flip_id) in enumerate(
        zip(starts, charges.tolist(), flip_ids, strict=True)
    ):
        current_flip = flip_id if flip_id >= 0 else None

        if current_flip != active_flip:
            if active_flip is not None:
                v = -eta * v_pre
            if current_flip is not None:
                v_pre = v
                flip_start = current_flip * half - t_f / 2.0
            active_flip = current_flip

        if flips and t_f == 0:
            crossing = int(round(a / half))
            if crossing > last_instant_flip and abs(a - crossing * half) <= dt * 1e-6:
                v = -eta * v
                last_instant_flip = crossing

        while sample < n_samples and sample_at[sample] == index:
            v_samples[sample] = ramp(a) if active_flip is not None else v
            sample += 1

        in_window = a >= window_start
        if in_window:
            q_source += abs(dq)

        if active_flip is not None:
            if in_window:
                q_waste += abs(dq)
            continue

        v += dq / c_p
        if v > v_clamp:
            delivered = (v - v_clamp) * c_p
            v = v_clamp
        elif v < -v_clamp:
            delivered = (-v_clamp - v) * c_p
            v = -v_clamp
        else:
            delivered = 0.0
        if in_window:
            q_out += delivered

    while sample < n_samples:
        v_samples[sample] = ramp(t_end) if active_flip is not None else v
        sample += 1

    q_half = q_source / 2.0
    q_flip_waste = q_waste / 2.0
    q_delivered = q_out / 2.0
    result = PowerResult(
        p_out=2.0 * source.f_res * v_s * q_delivered,
        v_s=v_s,
        q_half=q_half,
        q_reflip=max(0.0, q_half - q_flip_waste - q_delivered),
        q_flip_waste=q_flip_waste,
        q_out=q_delivered,
    )
    trace = WaveformTrace(
        t=grid,
        i_p=source.current(grid),
        v_pt=v_samples,
        period=period,
        flip_duration=t_f if flips else 0.0,
        n_cycles=n_cycles,
    )
    logger.debug(
        f"{model.kind.value}: v_s={v_s:.4g} V, p_out={result.p_out:.4e} W, "
        f"q_out={result.q_out:.4e} C over {len(trace)} samples"
    )
    return trace, result


def output_power_closed_form(source: PiezoSource, eta: float, v_s: float) -> float:
    """Output power with an instantaneous flip.

    Every half cycle the source delivers q_half; C_P swings by
    (1 - eta)(V_S + 2 V_D) before the bridge conducts. eta = -1 is the FBR.

    Raises:
        ValueError: If eta is outside [-1, 1) or v_s is negative
    """
    if not -1.0 <= eta < 1.0:
        raise ValueError("eta must lie in [-1, 1)")
    if not v_s >= 0:
        raise ValueError("v_s must be non-negative")
    q_reflip = source.c_p * (1.0 - eta) * source.clamp_voltage(v_s)
    return 2.0 * source.f_res * v_s * max(0.0, source.q_half - q_reflip)


# Below this 1 - eta the recharge term vanishes and power grows without bound.
_LOSSLESS_LIMIT = 1e-12


def optimal_storage_voltage(source: PiezoSource, eta: float) -> StorageOptimum:
    """Storage voltage maximising output_power_closed_form.

    Raises:
        ValueError: If eta is outside [-1, 1]
    """
    if not -1.0 <= eta <= 1.0:
        raise ValueError("eta must lie in [-1, 1]")
    if 1.0 - eta < _LOSSLESS_LIMIT:
        return StorageOptimum(v_s_opt=math.inf, p_max=math.inf, unbounded=True)

    swing = source.c_p * (1.0 - eta)
    v_s_opt = max(0.0, (source.q_half / swing - 2.0 * source.v_d) / 2.0)
    return StorageOptimum(
        v_s_opt=v_s_opt, p_max=output_power_closed_form(source, eta, v_s_opt)
    )


def numeric_storage_optimum(source: PiezoSource, eta: float) -> StorageOptimum:
    """Bounded scalar maximisation of the closed form over the feasible V_S range."""
    if not -1.0 <= eta < 1.0:
        raise ValueError("eta must lie in [-1, 1)")
    v_max = source.q_half / (source.c_p * (1.0 - eta)) - 2.0 * source.v_d
    if v_max <= 0:
        return StorageOptimum(v_s_opt=0.0, p_max=0.0)

    found = optimize.minimize_scalar(
        lambda v: -output_power_closed_form(source, eta, float(v)),
        bounds=(0.0, v_max),
        method="bounded",
        options={"xatol": v_max * 1e-10},
    )
    v_s = float(found.x)
    return StorageOptimum(v_s_opt=v_s, p_max=output_power_closed_form(source, eta, v_s))


def _integrate_abs(trace: WaveformTrace, lo: float, hi: float, extra: list[float]) -> float:
    inside = trace.t[(trace.t > lo) & (trace.t < hi)]
    nodes = np.unique(np.concatenate(([lo, hi], inside, [x for x in extra if lo < x < hi])))
    currents = np.abs(np.interp(nodes, trace.t, trace.i_p))
    return float(integrate.trapezoid(currents, nodes))


def flip_energy_loss(trace: WaveformTrace) -> FlipLoss:
    """Source charge lost during the flips of the final cycle.

    Args:
        trace: Trace produced by simulate

    Returns:
        FlipLoss: Waste per half cycle and its share of q_half

    Raises:
        TraceError: If the trace does not hold a settling cycle followed by a
        complete final cycle
    """
    period = trace.period
    if trace.n_cycles < 2 or len(trace) < 2:
        raise TraceError("flip loss needs at least two simulated cycles")
    t_end = float(trace.t[-1])
    if t_end - float(trace.t[0]) < 2.0 * period * (1.0 - 1e-9):
        raise TraceError("trace does not span a completed steady cycle")

    half = period / 2.0
    start = t_end - period
    first = math.ceil(start / half - 1e-9)
    crossings = [n * half for n in range(first, first + 3)]

    q_cycle = _integrate_abs(trace, start, t_end, crossings)
    waste = 0.0
    if trace.flip_duration > 0:
        for crossing in crossings:
            lo = max(crossing - trace.flip_duration / 2.0, start)
            hi = min(crossing + trace.flip_duration / 2.0, t_end)
            if hi > lo:
                waste += _integrate_abs(trace, lo, hi, [crossing])

    q_half = q_cycle / 2.0
    q_flip_waste = waste / 2.0
    return FlipLoss(
        q_flip_waste=q_flip_waste,
        fraction_of_q_half=q_flip_waste / q_half if q_half > 0 else 0.0,
    )
