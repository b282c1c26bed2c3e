"""On-chip area of the SSHC bank and the SSHI inductor comparison."""

from __future__ import annotations

import logging
import math

from ..models.api import (
    FootprintReport,
    InductorComparison,
    ProcessParams,
    SshcConfig,
)

logger = logging.getLogger(__name__)

# fF/um^2 -> F/mm^2
_DENSITY_TO_F_PER_MM2 = 1e-9

# A 5.6 mH inductor with a few ohms of DC resistance reaches the 80 % flip
# efficiency of an 8-stage bank; parts of that size occupy about 1 cm^3.
REFERENCE_INDUCTANCE_H = 5.6e-3
REFERENCE_INDUCTOR_VOLUME_MM3 = 1000.0

DEFAULT_CHIP_THICKNESS_MM = 0.3


def mim_area(c: float, process: ProcessParams | None = None) -> float:
    """MIM capacitor area in mm^2 for capacitance c in farads.

    Raises:
        ValueError: If c is negative
    """
    if not c >= 0:
        raise ValueError("capacitance must be non-negative")
    process = process or ProcessParams()
    return c / (process.mim_density * _DENSITY_TO_F_PER_MM2)


def bank_area(config: SshcConfig, process: ProcessParams | None = None) -> float:
    """Total MIM area of the bank in mm^2."""
    return math.fsum(mim_area(c, process) for c in config.bank)


def inductor_comparison(
    bank_area_mm2: float,
    chip_thickness: float = DEFAULT_CHIP_THICKNESS_MM,
) -> InductorComparison:
    """Compare the bank volume with the reference SSHI inductor.

    Args:
        bank_area_mm2: Bank area in mm^2
        chip_thickness: Die thickness in mm

    Returns:
        InductorComparison: Volumes and inductor-to-bank ratio (inf for an
        empty bank)

    Raises:
        ValueError: If chip_thickness is not positive or the area is negative
    """
    if not chip_thickness > 0:
        raise ValueError("chip_thickness must be positive")
    if not bank_area_mm2 >= 0:
        raise ValueError("bank area must be non-negative")

    volume = bank_area_mm2 * chip_thickness
    ratio = REFERENCE_INDUCTOR_VOLUME_MM3 / volume if volume > 0 else math.inf
    return InductorComparison(
        bank_volume_mm3=volume,
        inductor_volume_mm3=REFERENCE_INDUCTOR_VOLUME_MM3,
        ratio=ratio,
    )


def footprint_report(
    config: SshcConfig,
    process: ProcessParams | None = None,
    chip_thickness: float = DEFAULT_CHIP_THICKNESS_MM,
    area_budget: float | None = None,
) -> FootprintReport:
    """Area, volume and inductor comparison for one bank."""
    area = bank_area(config, process)
    report = FootprintReport(
        k=config.k,
        total_capacitance=config.total_capacitance,
        bank_area_mm2=area,
        comparison=inductor_comparison(area, chip_thickness),
        area_budget_mm2=area_budget,
    )
    if not report.within_budget:
        logger.info(
            f"Bank of {config.k} capacitors needs {area:.4g} mm^2, "
            f"budget is {area_budget:.4g} mm^2"
        )
    return report
