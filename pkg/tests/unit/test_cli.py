"""Unit tests for the sshc command line, its configuration and output helpers."""

import io
import json
import logging
import xml.etree.ElementTree as ET
from collections.abc import Callable
from pathlib import Path
from typing import Any

import pytest
from sshcsim.cli import RunConfig, app, load_config
from sshcsim.cli.output import format_number, write_csv, write_json
from sshcsim.errors import ConfigurationError
from sshcsim.utils.logging import parse_level, setup_logging
from typer.testing import CliRunner

WriteConfig = Callable[..., Path]

SWEEP = {
    "axes": [
        {"name": "k", "min": 1, "max": 8, "steps": 8},
        {"name": "r_on", "min": 10.0, "max": 1000.0, "steps": 3, "spacing": "log"},
    ],
    "objectives": ["flip_efficiency", "t_flip", "max_stage_count"],
}


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


def _csv_rows(path: Path) -> list[list[str]]:
    return [line.split(",") for line in path.read_text(encoding="utf-8").splitlines()]


class TestFormatNumber:
    """Test cases for format_number."""

    @pytest.mark.parametrize(
        ("value", "expected"),
        [
            (8, "8"),
            (0.0, "0"),
            (0.8, "0.8"),
            (117.64705882352942, "117.647058823529"),
            (5e-07, "5e-07"),
            (3.183098861837907e-11, "3.183098861837907e-11"),
            (2.5e6, "2.5e+06"),
            (float("inf"), "inf"),
            (float("nan"), "nan"),
            ("infeasible", "infeasible"),
        ],
    )
    def test_cells(self, value: Any, expected: str) -> None:
        """Test integers, plain and scientific floats and markers."""
        assert format_number(value) == expected


class TestWriters:
    """Test cases for write_csv and write_json."""

    def test_csv_uses_crlf(self) -> None:
        """Test header and rows end with CRLF."""
        stream = io.StringIO()
        write_csv(stream, ("k", "eta"), [(1, 1.0 / 3.0)])
        assert stream.getvalue() == "k,eta\r\n1,0.333333333333333\r\n"

    def test_json_replaces_non_finite_values(self) -> None:
        """Test inf becomes a string so the document stays valid JSON."""
        stream = io.StringIO()
        write_json(stream, {"area": {"ratio": float("inf"), "k": 0}})
        assert json.loads(stream.getvalue()) == {"area": {"ratio": "inf", "k": 0}}


class TestRunConfig:
    """Test cases for RunConfig and load_config."""

    def test_defaults(self) -> None:
        """Test the ultrasonic receiver and the eight-stage design."""
        config = load_config(None)
        assert config.source.c_p == 100e-12
        assert config.source.f_res == 100e3
        assert config.sshc.k == 8
        assert config.design_limit() == pytest.approx(117.65, abs=0.01)
        assert config.sshc_config().r_on == pytest.approx(config.design_limit())

    def test_json_round_trip(self, write_config: WriteConfig) -> None:
        """Test a configuration survives dump and reload."""
        config = RunConfig.model_validate(
            {"source": {"c_p": 47e-12}, "sshc": {"k": 4, "r_on": 50.0}, "sweep": SWEEP}
        )
        path = write_config(json.loads(config.model_dump_json()))
        assert load_config(path) == config

    def test_explicit_bank_applies_to_configured_k_only(self) -> None:
        """Test another k falls back to an equal bank of C_P."""
        config = RunConfig.model_validate(
            {"sshc": {"k": 2, "bank": [50e-12, 150e-12]}}
        )
        assert config.sshc_config().bank == (50e-12, 150e-12)
        assert config.sshc_config(3).bank == (100e-12,) * 3

    def test_bank_length_mismatch(self, write_config: WriteConfig) -> None:
        """Test the bank invariant surfaces as a configuration error."""
        path = write_config({"sshc": {"k": 3, "bank": [1e-10]}})
        with pytest.raises(ConfigurationError, match="bank length mismatch"):
            load_config(path)

    def test_missing_file(self, tmp_path: Path) -> None:
        """Test an unreadable path is reported."""
        with pytest.raises(ConfigurationError, match="cannot read config"):
            load_config(tmp_path / "missing.json")

    def test_baseline_needs_flip_efficiency(self) -> None:
        """Test the SSHI baseline has no solver efficiency to fall back on."""
        with pytest.raises(ValueError, match="explicit flip_efficiency"):
            RunConfig.model_validate({"simulation": {"rectifier": "sshi-baseline"}})


class TestGlobalOptions:
    """Test cases for options shared by every subcommand."""

    def test_unknown_key(self, runner: CliRunner, write_config: WriteConfig) -> None:
        """Test unknown configuration keys are rejected."""
        path = write_config({"bogus": 1})
        result = runner.invoke(app, ["--config", str(path), "area"])
        assert result.exit_code == 2

    def test_zero_capacitance(self, runner: CliRunner, write_config: WriteConfig) -> None:
        """Test the violated invariant is named."""
        path = write_config({"source": {"c_p": 0.0}})
        result = runner.invoke(app, ["--config", str(path), "design"])
        assert result.exit_code == 2
        assert "c_p must be positive" in result.output

    def test_missing_config(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test a missing configuration file exits with 2."""
        result = runner.invoke(app, ["--config", str(tmp_path / "nope.json"), "area"])
        assert result.exit_code == 2

    def test_unknown_log_level(self, runner: CliRunner) -> None:
        """Test the log level is checked."""
        result = runner.invoke(app, ["--log-level", "LOUD", "area"])
        assert result.exit_code == 2

    def test_setup_logging(self) -> None:
        """Test the package logger is configured."""
        logger = setup_logging(level="DEBUG", stream=io.StringIO())
        assert logger.name == "sshcsim"
        assert logger.level == logging.DEBUG
        assert logging.getLogger("matplotlib").level == logging.WARNING

    def test_parse_level(self) -> None:
        """Test level names are case-insensitive and checked."""
        assert parse_level("info") == logging.INFO
        with pytest.raises(ValueError, match="unknown log level"):
            parse_level("LOUD")


class TestEfficiencyCommand:
    """Test cases for the efficiency subcommand."""

    def test_default_range(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test k = 1..8 ends at 80 %."""
        out = tmp_path / "eta.csv"
        result = runner.invoke(app, ["--out", str(out), "efficiency"])
        assert result.exit_code == 0, result.output
        rows = _csv_rows(out)
        assert rows[0] == ["k", "eta_iterative", "eta_closed_form"]
        assert len(rows) == 9
        assert rows[-1][0] == "8"
        assert float(rows[-1][1]) == pytest.approx(0.8, abs=1e-9)
        assert out.read_bytes().endswith(b"\r\n")

    def test_single_stage(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test k = 1 alone gives a third."""
        out = tmp_path / "eta.csv"
        result = runner.invoke(
            app, ["--out", str(out), "efficiency", "--k-min", "1", "--k-max", "1"]
        )
        assert result.exit_code == 0, result.output
        rows = _csv_rows(out)
        assert len(rows) == 2
        assert rows[1][1].startswith("0.333")

    def test_zero_stages(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test the zero-bank row."""
        out = tmp_path / "eta.csv"
        result = runner.invoke(
            app, ["--out", str(out), "efficiency", "--k-min", "0", "--k-max", "0"]
        )
        assert result.exit_code == 0, result.output
        assert out.read_text(encoding="utf-8").splitlines()[1] == "0,0,0"

    def test_empty_range(self, runner: CliRunner) -> None:
        """Test k_min above k_max exits with 2."""
        result = runner.invoke(app, ["efficiency", "--k-min", "5", "--k-max", "2"])
        assert result.exit_code == 2

    def test_json(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test the JSON table."""
        out = tmp_path / "eta.json"
        result = runner.invoke(app, ["--out", str(out), "--format", "json", "efficiency"])
        assert result.exit_code == 0, result.output
        rows = json.loads(out.read_text(encoding="utf-8"))["efficiency"]
        assert [row["k"] for row in rows] == list(range(1, 9))
        assert rows[0]["eta_closed_form"] == pytest.approx(1.0 / 3.0)

    def test_svg_is_valid_and_deterministic(
        self, runner: CliRunner, tmp_path: Path
    ) -> None:
        """Test two runs write the same well-formed SVG."""
        paths = [tmp_path / "a.svg", tmp_path / "b.svg"]
        for path in paths:
            result = runner.invoke(
                app,
                ["--out", str(tmp_path / "eta.csv"), "--svg", str(path), "efficiency"],
            )
            assert result.exit_code == 0, result.output
        root = ET.fromstring(paths[0].read_bytes())
        assert root.tag.endswith("svg")
        assert paths[0].read_bytes() == paths[1].read_bytes()


class TestDesignCommand:
    """Test cases for the design subcommand."""

    def test_design_point(self, runner: CliRunner) -> None:
        """Test the 117.6 ohm limit and the 0.4 mm^2 bank."""
        result = runner.invoke(app, ["design"])
        assert result.exit_code == 0, result.output
        assert "R_ON ≤ 117.6 Ω" in result.output
        assert "flip_fraction 0.1000" in result.output
        assert "bank area 0.4 mm²" in result.output
        assert "feasible" in result.output

    def test_single_stage(self, runner: CliRunner) -> None:
        """Test the 666.7 ohm single-capacitor limit."""
        result = runner.invoke(app, ["design", "--k", "1"])
        assert result.exit_code == 0, result.output
        assert "666.7" in result.output

    def test_one_megahertz(self, runner: CliRunner, write_config: WriteConfig) -> None:
        """Test the 1 MHz design point."""
        path = write_config({"source": {"f_res": 1e6}})
        result = runner.invoke(app, ["--config", str(path), "design"])
        assert result.exit_code == 0, result.output
        assert "R_ON ≤ 11.76 Ω" in result.output

    def test_resistance_too_large(
        self, runner: CliRunner, write_config: WriteConfig
    ) -> None:
        """Test a slow switch exits with 1."""
        path = write_config({"sshc": {"r_on": 500.0}})
        result = runner.invoke(app, ["--config", str(path), "design"])
        assert result.exit_code == 1
        assert "infeasible" in result.output

    def test_json_report(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test the machine-readable report."""
        out = tmp_path / "design.json"
        result = runner.invoke(app, ["--out", str(out), "--format", "json", "design"])
        assert result.exit_code == 0, result.output
        report = json.loads(out.read_text(encoding="utf-8"))["design"]
        assert report["k"] == 8
        assert report["max_r_on_ohm"] == pytest.approx(117.647, abs=1e-3)
        assert report["t_flip_s"] == pytest.approx(0.5e-6)
        assert report["max_stage_count"] == 8
        assert report["feasible"] is True


class TestSimulateCommand:
    """Test cases for the simulate subcommand."""

    def test_trace_table(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test the CSV trace of the default five cycles."""
        out = tmp_path / "trace.csv"
        result = runner.invoke(app, ["--out", str(out), "simulate"])
        assert result.exit_code == 0, result.output
        rows = _csv_rows(out)
        assert rows[0] == ["t_seconds", "i_p_amperes", "v_pt_volts"]
        assert len(rows) == 1 + 5 * 2000 + 1
        assert "flip_fraction 0.1000" in result.output

    def test_zero_storage_voltage(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test nothing is delivered at V_S = 0."""
        out = tmp_path / "trace.csv"
        result = runner.invoke(app, ["--out", str(out), "simulate", "--v-s", "0"])
        assert result.exit_code == 0, result.output
        assert "output power 0 µW" in result.output

    def test_sshc_beats_the_bridge(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test the SSHC output power exceeds the full-bridge one."""
        powers = {}
        for kind in ("sshc", "fbr"):
            out = tmp_path / f"{kind}.json"
            result = runner.invoke(
                app,
                ["--out", str(out), "--format", "json", "simulate", "--rectifier", kind],
            )
            assert result.exit_code == 0, result.output
            powers[kind] = json.loads(out.read_text(encoding="utf-8"))["power"]["p_out"]
        assert powers["sshc"] > powers["fbr"] > 0

    def test_bad_storage_voltage(self, runner: CliRunner) -> None:
        """Test a non-numeric --v-s exits with 2."""
        result = runner.invoke(app, ["simulate", "--v-s", "lots"])
        assert result.exit_code == 2

    def test_negative_storage_voltage(self, runner: CliRunner) -> None:
        """Test a negative --v-s exits with 2."""
        result = runner.invoke(app, ["simulate", "--v-s", "-1"])
        assert result.exit_code == 2


class TestSweepCommand:
    """Test cases for the sweep subcommand."""

    def test_workers_give_identical_files(
        self, runner: CliRunner, write_config: WriteConfig, tmp_path: Path
    ) -> None:
        """Test the sweep CSV does not depend on the worker count."""
        path = write_config({"sweep": SWEEP})
        outputs = []
        for workers in ("1", "4"):
            out = tmp_path / f"sweep-{workers}.csv"
            result = runner.invoke(
                app,
                ["--config", str(path), "--out", str(out), "sweep", "--workers", workers],
            )
            assert result.exit_code == 0, result.output
            outputs.append(out.read_bytes())
        assert outputs[0] == outputs[1]
        lines = outputs[0].decode("utf-8").split("\r\n")
        assert lines[0] == "k,r_on,flip_efficiency,t_flip,max_stage_count"
        assert len([line for line in lines if line]) == 1 + 8 * 3

    def test_duplicate_axis(self, runner: CliRunner, write_config: WriteConfig) -> None:
        """Test a duplicated axis exits with 2."""
        axis = {"name": "k", "min": 1, "max": 2, "steps": 2}
        path = write_config({"sweep": {"axes": [axis, axis]}})
        result = runner.invoke(app, ["--config", str(path), "sweep"])
        assert result.exit_code == 2
        assert "duplicate axis name: k" in result.output

    def test_missing_sweep_section(self, runner: CliRunner) -> None:
        """Test the default configuration has nothing to sweep."""
        result = runner.invoke(app, ["sweep"])
        assert result.exit_code == 2


class TestAreaCommand:
    """Test cases for the area subcommand."""

    def test_default_bank(self, runner: CliRunner) -> None:
        """Test the eight-stage bank report."""
        result = runner.invoke(app, ["area"])
        assert result.exit_code == 0, result.output
        assert "bank area 0.4 mm²" in result.output
        assert "under 1 mm³" in result.output

    def test_over_budget(self, runner: CliRunner, write_config: WriteConfig) -> None:
        """Test a bank larger than the budget exits with 1."""
        path = write_config({"footprint": {"area_budget": 0.1}})
        result = runner.invoke(app, ["--config", str(path), "area"])
        assert result.exit_code == 1

    def test_json_report(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test the empty bank's infinite ratio is written as a string."""
        out = tmp_path / "area.json"
        result = runner.invoke(
            app, ["--out", str(out), "--format", "json", "area", "--k", "0"]
        )
        assert result.exit_code == 0, result.output
        report = json.loads(out.read_text(encoding="utf-8"))["area"]
        assert report["bank_area_mm2"] == 0.0
        assert report["ratio"] == "inf"
