"""Phase schedule generation and input validation for SSHC rectifiers."""

from __future__ import annotations

import logging
from collections.abc import Mapping
from typing import Any

from pydantic import BaseModel, ValidationError

from ..errors import ConfigurationError
from ..models.api import (
    FlipDirection,
    PhaseDescriptor,
    PhaseKind,
    PhaseSchedule,
    PiezoSource,
    Polarity,
    SshcConfig,
)

logger = logging.getLogger(__name__)


def build_phase_schedule(
    k: int, direction: FlipDirection = FlipDirection.DOWN
) -> PhaseSchedule:
    """Build the 2k+1 phase sequence phi_1p..phi_kp, phi_0, phi_kn..phi_1n.

    The down-flip dumps charge into the bank in the same polarity, clears the
    node, then returns charge in reversed polarity. The up-flip uses the same
    order with every connection polarity negated.

    Args:
        k: Stage count (number of bank capacitors)
        direction: Flip direction the schedule serves

    Returns:
        PhaseSchedule: Ordered phases for the requested direction

    Raises:
        ValueError: If k is negative
    """
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")

    p_phases = [
        PhaseDescriptor(
            name=f"phi_{i}p", kind=PhaseKind.P, capacitor=i, polarity=Polarity.SAME
        )
        for i in range(1, k + 1)
    ]
    clearing = PhaseDescriptor(name="phi_0", kind=PhaseKind.ZERO, polarity=Polarity.GROUND)
    n_phases = [
        PhaseDescriptor(
            name=f"phi_{i}n", kind=PhaseKind.N, capacitor=i, polarity=Polarity.REVERSED
        )
        for i in range(k, 0, -1)
    ]

    schedule = PhaseSchedule(k=k, phases=(*p_phases, clearing, *n_phases))
    if direction is FlipDirection.UP:
        schedule = schedule.mirrored()
    return schedule


def _coerce(
    model: type[BaseModel], value: BaseModel | Mapping[str, Any]
) -> tuple[Any, list[str]]:
    if isinstance(value, model):
        # Re-run validators so instances built with model_construct are checked too
        value = value.model_dump()
    try:
        return model.model_validate(value), []
    except ValidationError as e:
        return None, ConfigurationError.from_validation_error(e).violations


def validate(
    source: PiezoSource | Mapping[str, Any],
    config: SshcConfig | Mapping[str, Any],
) -> tuple[PiezoSource, SshcConfig]:
    """Check every invariant of a source/configuration pair.

    Args:
        source: Transducer model or its field mapping
        config: SSHC configuration or its field mapping

    Returns:
        tuple: The validated (source, config) pair

    Raises:
        ConfigurationError: Naming every violated invariant of both inputs
    """
    checked_source, source_errors = _coerce(PiezoSource, source)
    checked_config, config_errors = _coerce(SshcConfig, config)

    violations = source_errors + config_errors
    if violations:
        logger.debug(f"Validation failed with {len(violations)} violation(s)")
        raise ConfigurationError(violations)

    return checked_source, checked_config
