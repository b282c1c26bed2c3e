"""sshc command line: efficiency, design, simulate, sweep and area subcommands."""

import logging
import sys
from collections.abc import Iterator, Sequence
from contextlib import contextmanager
from enum import Enum
from pathlib import Path
from typing import Annotated, Any, TextIO

import typer
from pydantic import BaseModel, ConfigDict, ValidationError
from rich.console import Console
from rich.table import Table

from ..core.flip import closed_form_efficiency, steady_state_efficiency
from ..core.footprint import footprint_report
from ..core.timing import (
    fits_budget,
    max_stage_count,
    timing_report,
)
from ..core.waveform import flip_energy_loss, optimal_storage_voltage, simulate
from ..errors import ConfigurationError, SweepSpecError
from ..models.api import RectifierKind, RectifierModel
from ..sweep.engine import run_sweep
from ..utils.logging import setup_logging
from . import output
from .config import RunConfig, load_config

logger = logging.getLogger(__name__)

EXIT_INFEASIBLE = 1
EXIT_INVALID = 2


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


class CliOptions(BaseModel):
    """Global options shared by every subcommand."""

    model_config = ConfigDict(frozen=True)

    config: RunConfig
    out: Path | None = None
    format: OutputFormat = OutputFormat.CSV
    svg: Path | None = None


app = typer.Typer(
    name="sshc",
    help="Simulation and design-space exploration for SSHC rectifiers.",
    no_args_is_help=True,
    add_completion=False,
)


def _invalid(message: str) -> typer.Exit:
    Console(stderr=True).print(f"[red]error:[/red] {message}", highlight=False)
    return typer.Exit(code=EXIT_INVALID)


@app.callback()
def main(
    ctx: typer.Context,
    config: Annotated[
        Path | None, typer.Option("--config", help="JSON run configuration")
    ] = None,
    out: Annotated[
        Path | None, typer.Option("--out", help="Write the table here instead of stdout")
    ] = None,
    fmt: Annotated[
        OutputFormat, typer.Option("--format", help="Table format")
    ] = OutputFormat.CSV,
    svg: Annotated[Path | None, typer.Option("--svg", help="Write an SVG figure")] = None,
    log_level: Annotated[
        str, typer.Option("--log-level", help="DEBUG, INFO, WARNING or ERROR")
    ] = "WARNING",
) -> None:
    """Load the run configuration shared by all subcommands."""
    try:
        setup_logging(level=log_level)
    except ValueError as e:
        raise _invalid(str(e)) from e
    try:
        run_config = load_config(config)
    except ConfigurationError as e:
        raise _invalid("; ".join(e.violations)) from e
    ctx.obj = CliOptions(config=run_config, out=out, format=fmt, svg=svg)


@contextmanager
def _table_stream(options: CliOptions) -> Iterator[TextIO]:
    if options.out is None:
        yield sys.stdout
        return
    with options.out.open("w", encoding="utf-8", newline="") as stream:
        yield stream
    logger.info(f"Wrote {options.out}")


def _console(table_on_stdout: bool = False) -> Console:
    """Report console; moves to stderr when stdout carries a table."""
    return Console(stderr=table_on_stdout, highlight=False, soft_wrap=True)


def _emit_table(
    options: CliOptions,
    name: str,
    columns: Sequence[str],
    rows: Sequence[Sequence[Any]],
    extra: dict[str, Any] | None = None,
) -> None:
    with _table_stream(options) as stream:
        if options.format is OutputFormat.JSON:
            payload: dict[str, Any] = dict(extra or {})
            payload[name] = output.records(columns, rows)
            output.write_json(stream, payload)
        else:
            output.write_csv(stream, columns, rows)


def _emit_report(options: CliOptions, name: str, report: dict[str, Any]) -> None:
    with _table_stream(options) as stream:
        output.write_json(stream, {name: report})


def _options(ctx: typer.Context) -> CliOptions:
    options = ctx.obj
    if not isinstance(options, CliOptions):
        raise _invalid("run configuration was not loaded")
    return options


@app.command("efficiency")
def cmd_efficiency(
    ctx: typer.Context,
    k_min: Annotated[int | None, typer.Option(help="First stage count")] = None,
    k_max: Annotated[int | None, typer.Option(help="Last stage count")] = None,
) -> None:
    """Steady-state flip efficiency against the stage count."""
    options = _options(ctx)
    config = options.config
    low = config.efficiency.k_min if k_min is None else k_min
    high = config.efficiency.k_max if k_max is None else k_max
    if low < 0 or low > high:
        raise _invalid(f"stage count range {low}..{high} is empty or negative")

    ks = list(range(low, high + 1))
    iterative = []
    for k in ks:
        result = steady_state_efficiency(
            config.source,
            config.sshc_config(k),
            config.settling,
            tol=config.efficiency.tol,
        )
        iterative.append(result.efficiency)
    closed = [closed_form_efficiency(k) for k in ks]

    rows = list(zip(ks, iterative, closed, strict=True))
    _emit_table(options, "efficiency", ("k", "eta_iterative", "eta_closed_form"), rows)
    if options.svg is not None:
        from .plots import efficiency_curve

        efficiency_curve(ks, iterative, closed, options.svg)

    if options.out is not None:
        table = Table("k", "flip efficiency", "k/(k+2)")
        for k, eta, eta_closed in rows:
            table.add_row(str(k), f"{eta:.4f}", f"{eta_closed:.4f}")
        _console().print(table)


@app.command("design")
def cmd_design(
    ctx: typer.Context,
    k: Annotated[int | None, typer.Option(help="Stage count")] = None,
) -> None:
    """Maximum ON-resistance, flip time and bank area of a design point."""
    options = _options(ctx)
    config = options.config
    if k is not None and k < 0:
        raise _invalid(f"k must be non-negative, got {k}")
    sshc = config.sshc_config(k)
    source = config.source

    r_max = config.design_limit(sshc.k)
    timing = timing_report(source, sshc)
    budget = config.sshc.budget_fraction * source.half_period
    timing_ok = fits_budget(timing.t_flip, budget)
    stages = (
        max_stage_count(
            source.c_p,
            source.period,
            sshc.r_on,
            config.sshc.budget_fraction,
            sshc.settle_factor,
        )
        if sshc.r_on > 0
        else None
    )
    footprint = footprint_report(
        sshc,
        config.process,
        config.footprint.chip_thickness,
        config.footprint.area_budget,
    )
    feasible = timing_ok and footprint.within_budget

    if options.format is OutputFormat.JSON:
        _emit_report(
            options,
            "design",
            {
                "k": sshc.k,
                "max_r_on_ohm": r_max,
                "r_on_ohm": sshc.r_on,
                "t_flip_s": timing.t_flip,
                "flip_fraction": timing.flip_fraction,
                "budget_s": budget,
                "max_stage_count": stages.k_max if stages is not None else None,
                "bank_area_mm2": footprint.bank_area_mm2,
                "feasible": feasible,
            },
        )
    else:
        console = _console()
        console.print(f"[bold]SSHC design point, k = {sshc.k}[/bold]")
        console.print(f"max ON-resistance: R_ON ≤ {r_max:.4g} Ω")
        console.print(f"loop resistance: {sshc.r_on:.4g} Ω")
        console.print(
            f"flip time T_F = {timing.t_flip * 1e6:.4g} µs "
            f"(budget {budget * 1e6:.4g} µs)"
        )
        console.print(f"flip_fraction {timing.flip_fraction:.4f}")
        console.print(f"settled charge per phase {timing.transfer_fraction:.2%}")
        if stages is not None and stages.k_max is not None:
            console.print(f"max stage count at this R_ON: {stages.k_max}")
        console.print(f"bank area {footprint.bank_area_mm2:.4g} mm²")
        console.print("feasible" if feasible else "[red]infeasible[/red]")

    if not feasible:
        raise typer.Exit(code=EXIT_INFEASIBLE)


def _rectifier(config: RunConfig) -> RectifierModel:
    simulation = config.simulation
    if simulation.rectifier is RectifierKind.FBR:
        return RectifierModel.fbr()

    sshc = config.sshc_config()
    if simulation.flip_efficiency is not None:
        eta = simulation.flip_efficiency
    else:
        eta = steady_state_efficiency(config.source, sshc, config.settling).efficiency

    if simulation.flip_duration != "auto":
        flip_duration = float(simulation.flip_duration)
    elif simulation.rectifier is RectifierKind.SSHC:
        flip_duration = timing_report(config.source, sshc).t_flip
    else:
        flip_duration = 0.0
    return RectifierModel(
        kind=simulation.rectifier, flip_efficiency=eta, flip_duration=flip_duration
    )


@app.command("simulate")
def cmd_simulate(
    ctx: typer.Context,
    rectifier: Annotated[
        RectifierKind | None, typer.Option(help="Override the configured rectifier")
    ] = None,
    v_s: Annotated[
        str | None, typer.Option("--v-s", help="Storage voltage in volts, or auto")
    ] = None,
) -> None:
    """Simulate I_P and V_PT and report the output power of the final cycle."""
    options = _options(ctx)
    config = options.config
    updates: dict[str, Any] = {}
    if rectifier is not None:
        updates["rectifier"] = rectifier
    if v_s is not None and v_s != "auto":
        try:
            updates["v_s"] = float(v_s)
        except ValueError as e:
            raise _invalid(f"--v-s must be a number or auto, got {v_s}") from e
    elif v_s is not None:
        updates["v_s"] = v_s
    if updates:
        try:
            config = RunConfig.model_validate(
                {
                    **config.model_dump(mode="json"),
                    "simulation": {**config.simulation.model_dump(mode="json"), **updates},
                }
            )
        except ValidationError as e:
            raise _invalid(str(ConfigurationError.from_validation_error(e))) from e

    try:
        model = _rectifier(config)
    except ValueError as e:
        raise _invalid(str(e)) from e
    source = config.source
    if config.simulation.v_s == "auto":
        storage = optimal_storage_voltage(source, model.effective_eta).v_s_opt
    else:
        storage = float(config.simulation.v_s)

    try:
        trace, power = simulate(
            source,
            model,
            storage,
            n_cycles=config.simulation.n_cycles,
            steps_per_period=config.simulation.steps_per_period,
        )
    except ValueError as e:
        raise _invalid(str(e)) from e
    loss = flip_energy_loss(trace) if trace.n_cycles >= 2 else None

    summary = power.model_dump()
    summary["flip_efficiency"] = model.effective_eta
    summary["flip_fraction"] = model.effective_flip_duration / source.half_period
    if loss is not None:
        summary["flip_loss_fraction"] = loss.fraction_of_q_half
    _emit_table(options, "trace", trace.COLUMNS, list(trace.rows()), {"power": summary})
    if options.svg is not None:
        from .plots import waveform

        waveform(trace, options.svg)

    console = _console(table_on_stdout=options.out is None)
    console.print(f"[bold]{model.kind.value} rectifier[/bold]")
    if model.kind is not RectifierKind.FBR:
        console.print(f"flip efficiency {model.effective_eta:.4f}")
    console.print(f"flip_fraction {summary['flip_fraction']:.4f}")
    console.print(f"V_S = {power.v_s:.4g} V")
    console.print(f"output power {power.p_out * 1e6:.4g} µW")
    console.print(
        f"per half cycle: source {power.q_half * 1e12:.4g} pC, "
        f"re-flip {power.q_reflip * 1e12:.4g} pC, "
        f"flip waste {power.q_flip_waste * 1e12:.4g} pC, "
        f"delivered {power.q_out * 1e12:.4g} pC"
    )


@app.command("sweep")
def cmd_sweep(
    ctx: typer.Context,
    workers: Annotated[
        int | None, typer.Option(help="Worker threads (configured value by default)")
    ] = None,
) -> None:
    """Tabulate the configured objectives over the sweep grid."""
    options = _options(ctx)
    spec = options.config.sweep
    if spec is None:
        raise _invalid("config has no sweep section")
    try:
        table = run_sweep(spec, workers=workers or options.config.workers)
    except SweepSpecError as e:
        raise _invalid(str(e)) from e
    _emit_table(options, "sweep", table.columns, table.rows)


@app.command("area")
def cmd_area(
    ctx: typer.Context,
    k: Annotated[int | None, typer.Option(help="Stage count")] = None,
) -> None:
    """Bank area, bank volume and the SSHI inductor comparison."""
    options = _options(ctx)
    config = options.config
    if k is not None and k < 0:
        raise _invalid(f"k must be non-negative, got {k}")
    sshc = config.sshc_config(k)
    report = footprint_report(
        sshc,
        config.process,
        config.footprint.chip_thickness,
        config.footprint.area_budget,
    )
    comparison = report.comparison

    if options.format is OutputFormat.JSON:
        _emit_report(
            options,
            "area",
            {
                "k": report.k,
                "total_capacitance_f": report.total_capacitance,
                "bank_area_mm2": report.bank_area_mm2,
                "bank_volume_mm3": comparison.bank_volume_mm3,
                "inductor_volume_mm3": comparison.inductor_volume_mm3,
                "ratio": comparison.ratio,
                "within_budget": report.within_budget,
            },
        )
    else:
        console = _console()
        console.print(
            f"bank of {report.k} capacitors, {report.total_capacitance * 1e12:.4g} pF"
        )
        console.print(f"bank area {report.bank_area_mm2:.4g} mm²")
        console.print(
            f"bank volume {comparison.bank_volume_mm3:.4g} mm³ "
            f"({'under' if comparison.bank_under_one_mm3 else 'over'} 1 mm³)"
        )
        console.print(
            f"reference inductor {comparison.inductor_volume_mm3:.4g} mm³, "
            f"ratio {comparison.ratio:.4g}"
        )
        if report.area_budget_mm2 is not None:
            verdict = "within" if report.within_budget else "[red]over[/red]"
            console.print(f"{verdict} the {report.area_budget_mm2:.4g} mm² budget")

    if not report.within_budget:
        raise typer.Exit(code=EXIT_INFEASIBLE)


if __name__ == "__main__":
    app()
