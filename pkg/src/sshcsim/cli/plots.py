"""Static SVG figures: efficiency against stage count and the I_P / V_PT waveforms."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from pathlib import Path

import matplotlib
import numpy as np
from matplotlib.figure import Figure

from ..models.api import WaveformTrace

logger = logging.getLogger(__name__)

# Fixed ids and text-as-text keep the SVG identical between runs.
_SVG_RC = {
    "svg.hashsalt": "sshcsim",
    "svg.fonttype": "none",
    "path.simplify": False,
}


def _save(figure: Figure, path: Path) -> None:
    with matplotlib.rc_context(_SVG_RC):
        figure.savefig(path, format="svg", metadata={"Date": None})
    logger.info(f"Wrote {path}")


def efficiency_curve(
    ks: Sequence[int],
    iterative: Sequence[float],
    closed_form: Sequence[float],
    path: Path,
) -> None:
    """Flip efficiency against the number of bank capacitors."""
    figure = Figure(figsize=(5.0, 3.5), layout="constrained")
    axes = figure.add_subplot()
    axes.plot(ks, closed_form, color="0.6", linewidth=1.0, label="k/(k+2)")
    axes.plot(ks, iterative, "o", color="tab:blue", markersize=4, label="charge sharing")
    axes.set_xlabel("number of capacitors k")
    axes.set_ylabel("flip efficiency")
    axes.set_ylim(0.0, 1.0)
    axes.grid(True, linewidth=0.3)
    axes.legend(loc="lower right")
    _save(figure, path)


def waveform(trace: WaveformTrace, path: Path) -> None:
    """I_P above V_PT, with the source current lost during flips filled in."""
    t_us = trace.t * 1e6
    figure = Figure(figsize=(6.0, 4.0), layout="constrained")
    current_axes, voltage_axes = figure.subplots(2, 1, sharex=True)

    current_axes.plot(t_us, trace.i_p * 1e6, color="tab:blue", linewidth=1.0)
    if trace.flip_duration > 0:
        half = trace.period / 2.0
        offset = np.abs(trace.t - np.rint(trace.t / half) * half)
        in_flip = offset <= trace.flip_duration / 2.0
        current_axes.fill_between(
            t_us, trace.i_p * 1e6, 0.0, where=in_flip, color="black", linewidth=0.0
        )
    current_axes.set_ylabel("I_P (uA)")
    current_axes.grid(True, linewidth=0.3)

    voltage_axes.plot(t_us, trace.v_pt, color="tab:red", linewidth=1.0)
    voltage_axes.set_ylabel("V_PT (V)")
    voltage_axes.set_xlabel("time (us)")
    voltage_axes.grid(True, linewidth=0.3)

    _save(figure, path)
