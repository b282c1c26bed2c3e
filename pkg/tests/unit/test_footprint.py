"""Unit tests for bank area and the inductor comparison."""

import math

import pytest
from sshcsim.core.footprint import (
    REFERENCE_INDUCTOR_VOLUME_MM3,
    bank_area,
    footprint_report,
    inductor_comparison,
    mim_area,
)
from sshcsim.models.api import PiezoSource, ProcessParams, SshcConfig


def _within_ulps(value: float, expected: float, ulps: int = 4) -> bool:
    return abs(value - expected) <= ulps * math.ulp(expected)


class TestMimArea:
    """Test cases for mim_area."""

    def test_single_capacitor(self) -> None:
        """Test 100 pF at 2 fF/um^2 takes 0.05 mm^2."""
        assert _within_ulps(mim_area(100e-12), 0.05)

    def test_bank_sized_capacitance(self) -> None:
        """Test 800 pF takes 0.4 mm^2."""
        assert _within_ulps(mim_area(800e-12, ProcessParams(mim_density=2.0)), 0.4)

    def test_zero_capacitance(self) -> None:
        """Test an absent capacitor takes no area."""
        assert mim_area(0.0) == 0.0

    def test_negative_capacitance(self) -> None:
        """Test negative capacitance is rejected."""
        with pytest.raises(ValueError, match="non-negative"):
            mim_area(-1e-12)

    def test_density_scaling(self) -> None:
        """Test a denser process needs proportionally less area."""
        assert mim_area(100e-12, ProcessParams(mim_density=4.0)) == pytest.approx(0.025)

    @pytest.mark.parametrize(
        ("a", "b"),
        [(100e-12, 100e-12), (1e-12, 37e-12), (2.2e-10, 4.7e-11), (1e-9, 3.3e-12)],
    )
    def test_linear(self, a: float, b: float) -> None:
        """Test mim_area(a + b) = mim_area(a) + mim_area(b)."""
        assert _within_ulps(mim_area(a + b), mim_area(a) + mim_area(b))


class TestBankArea:
    """Test cases for bank_area."""

    def test_eight_stage_bank(self) -> None:
        """Test 8 x 100 pF takes 0.4 mm^2."""
        assert _within_ulps(bank_area(SshcConfig.equal_bank(8, 100e-12)), 0.4)

    def test_empty_bank(self) -> None:
        """Test k=0 takes no area."""
        assert bank_area(SshcConfig(k=0)) == 0.0

    def test_four_stage_bank(self) -> None:
        """Test the linear sum for four capacitors."""
        assert bank_area(SshcConfig.equal_bank(4, 100e-12)) == pytest.approx(0.2)

    @pytest.mark.parametrize("k", [1, 3, 8, 17])
    def test_equal_bank_is_k_unit_areas(self, k: int) -> None:
        """Test k equal capacitors take k times one capacitor."""
        area = bank_area(SshcConfig.equal_bank(k, 47e-12))
        assert area == pytest.approx(k * mim_area(47e-12), rel=1e-12)


class TestInductorComparison:
    """Test cases for inductor_comparison."""

    def test_eight_stage_bank(self) -> None:
        """Test the 0.4 mm^2 bank against the 1 cm^3 inductor."""
        comparison = inductor_comparison(0.4, 0.3)
        assert comparison.bank_volume_mm3 == pytest.approx(0.12)
        assert comparison.inductor_volume_mm3 == REFERENCE_INDUCTOR_VOLUME_MM3
        assert comparison.ratio == pytest.approx(8333.33, abs=0.01)
        assert comparison.bank_under_one_mm3

    def test_sub_cubic_millimetre_bank(self) -> None:
        """Test a bank under 1 mm^3 is at least 1000 times smaller."""
        comparison = inductor_comparison(3.0, 0.3)
        assert comparison.bank_under_one_mm3
        assert comparison.ratio >= 1000.0

    def test_empty_bank(self) -> None:
        """Test the infinite ratio of a zero-area bank."""
        assert inductor_comparison(0.0).ratio == math.inf

    def test_invalid_arguments(self) -> None:
        """Test non-positive thickness and negative area."""
        with pytest.raises(ValueError, match="chip_thickness"):
            inductor_comparison(0.4, 0.0)
        with pytest.raises(ValueError, match="bank area"):
            inductor_comparison(-0.1)


class TestFootprintReport:
    """Test cases for footprint_report."""

    def test_ultrasonic_bank_fits_on_chip(self, receiver: PiezoSource) -> None:
        """Test the 100 pF receiver bank."""
        report = footprint_report(
            SshcConfig.equal_bank(8, receiver.c_p), area_budget=0.5
        )
        assert report.k == 8
        assert report.total_capacitance == pytest.approx(800e-12)
        assert report.bank_area_mm2 == pytest.approx(0.4)
        assert report.within_budget
        assert report.comparison.bank_under_one_mm3

    def test_vibration_harvester_bank_is_impractical(self) -> None:
        """Test the nF-scale bank of a low-frequency harvester."""
        source = PiezoSource.vibration_harvester()
        report = footprint_report(
            SshcConfig.equal_bank(8, source.c_p), area_budget=1.0
        )
        assert report.bank_area_mm2 == pytest.approx(40.0)
        assert not report.within_budget
        assert not report.comparison.bank_under_one_mm3
