"""Unit tests for phase schedules and input validation."""

import pytest
from sshcsim.core.schedule import build_phase_schedule, validate
from sshcsim.errors import ConfigurationError
from sshcsim.models.api import (
    FlipDirection,
    PhaseKind,
    PiezoSource,
    Polarity,
    SshcConfig,
)


class TestBuildPhaseSchedule:
    """Test cases for build_phase_schedule."""

    def test_single_stage(self) -> None:
        """Test the three phases of a one-capacitor bank."""
        schedule = build_phase_schedule(1)
        assert schedule.names == ["phi_1p", "phi_0", "phi_1n"]
        assert len(schedule) == 3

    def test_eight_stages(self) -> None:
        """Test ordering of the eight-capacitor schedule."""
        schedule = build_phase_schedule(8)
        assert len(schedule) == 17
        assert schedule.names[:3] == ["phi_1p", "phi_2p", "phi_3p"]
        assert schedule.names[8] == "phi_0"
        assert schedule.names[-2:] == ["phi_2n", "phi_1n"]
        assert schedule.switch_count == 33

    def test_zero_stages(self) -> None:
        """Test that k=0 leaves only the clearing phase."""
        schedule = build_phase_schedule(0)
        assert schedule.names == ["phi_0"]
        assert schedule.phases[0].capacitor is None
        assert schedule.phases[0].polarity is Polarity.GROUND

    def test_negative_stage_count(self) -> None:
        """Test that negative k is rejected."""
        with pytest.raises(ValueError, match="non-negative"):
            build_phase_schedule(-1)

    @pytest.mark.parametrize("k", range(0, 11))
    def test_palindrome_with_swapped_labels(self, k: int) -> None:
        """Test that phase i and phase 2k+2-i use the same capacitor."""
        phases = build_phase_schedule(k).phases
        assert len(phases) == 2 * k + 1
        swap = {PhaseKind.P: PhaseKind.N, PhaseKind.N: PhaseKind.P}
        for phase, mirror in zip(phases, reversed(phases), strict=True):
            assert mirror.capacitor == phase.capacitor
            assert mirror.kind is swap.get(phase.kind, PhaseKind.ZERO)

    def test_down_flip_polarities(self) -> None:
        """Test same polarity for p-phases and reversed for n-phases."""
        schedule = build_phase_schedule(3)
        assert schedule.direction is FlipDirection.DOWN
        for phase in schedule.phases:
            expected = {
                PhaseKind.P: Polarity.SAME,
                PhaseKind.ZERO: Polarity.GROUND,
                PhaseKind.N: Polarity.REVERSED,
            }[phase.kind]
            assert phase.polarity is expected

    def test_up_flip_negates_polarities(self) -> None:
        """Test that the up-flip schedule mirrors the down-flip one."""
        down = build_phase_schedule(4)
        up = build_phase_schedule(4, FlipDirection.UP)
        assert up.direction is FlipDirection.UP
        assert up.names == down.names
        for d, u in zip(down.phases, up.phases, strict=True):
            assert u.polarity is d.polarity.negated
        assert up.mirrored() == down


class TestValidate:
    """Test cases for validate."""

    def test_valid_pair_is_returned_unchanged(self, receiver: PiezoSource) -> None:
        """Test the receiver defaults pass validation."""
        config = SshcConfig.equal_bank(8, 100e-12)
        checked_source, checked_config = validate(receiver, config)
        assert checked_source == receiver
        assert checked_config == config

    def test_mappings_are_accepted(self) -> None:
        """Test validation of raw field mappings."""
        source, config = validate(
            {"c_p": 100e-12, "f_res": 100e3, "i_amp": 10e-6},
            {"k": 2, "bank": [100e-12, 100e-12]},
        )
        assert source.c_p == 100e-12
        assert config.bank == (100e-12, 100e-12)

    def test_zero_capacitance(self) -> None:
        """Test the c_p invariant is named in the report."""
        with pytest.raises(ConfigurationError) as exc_info:
            validate({"c_p": 0.0}, {"k": 0})
        assert exc_info.value.violations == ["c_p must be positive"]

    def test_bank_length_mismatch(self, receiver: PiezoSource) -> None:
        """Test the structural violation is reported."""
        with pytest.raises(ConfigurationError, match="bank length mismatch"):
            validate(receiver, {"k": 3, "bank": [1e-10, 1e-10]})

    def test_every_violation_is_collected(self) -> None:
        """Test that violations of both inputs are reported together."""
        with pytest.raises(ConfigurationError) as exc_info:
            validate(
                {"c_p": 0.0, "f_res": 0.0, "i_amp": 1e-6},
                {"k": 1, "bank": [1e-10], "r_on": -5.0},
            )
        violations = exc_info.value.violations
        assert "c_p must be positive" in violations
        assert "f_res must be positive" in violations
        assert "r_on must be non-negative" in violations
        assert len(violations) == 3

    def test_constructed_instances_are_rechecked(self) -> None:
        """Test that instances bypassing validation are still checked."""
        broken = PiezoSource.model_construct(c_p=-1.0, f_res=1e5, i_amp=1e-5, v_d=0.0)
        with pytest.raises(ConfigurationError, match="c_p must be positive"):
            validate(broken, SshcConfig(k=0))
