"""CSV and JSON emitters for command tables and reports."""

from __future__ import annotations

import csv
import json
import math
from collections.abc import Iterable, Sequence
from typing import Any, TextIO

# Magnitudes outside [SCI_BELOW, SCI_FROM) are written in scientific notation.
SCI_BELOW = 1e-3
SCI_FROM = 1e6


def format_number(value: Any) -> str:
    """Locale-independent text for one table cell."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if not isinstance(value, float):
        return str(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if value == 0:
        return "0"
    magnitude = abs(value)
    if magnitude < SCI_BELOW or magnitude >= SCI_FROM:
        mantissa, exponent = f"{value:.15e}".split("e")
        mantissa = mantissa.rstrip("0").rstrip(".")
        return f"{mantissa}e{exponent}"
    return f"{value:.15g}"


def write_csv(
    stream: TextIO, columns: Sequence[str], rows: Iterable[Sequence[Any]]
) -> None:
    """Header row then one formatted row per record, RFC 4180 quoting."""
    writer = csv.writer(stream, lineterminator="\r\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_number(cell) for cell in row])


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(key): _jsonable(item) for key, item in value.items()}
    if isinstance(value, list | tuple):
        return [_jsonable(item) for item in value]
    if isinstance(value, float) and not math.isfinite(value):
        return format_number(value)
    return value


def write_json(stream: TextIO, payload: dict[str, Any]) -> None:
    """One JSON object; non-finite floats become the strings inf, -inf or nan."""
    json.dump(_jsonable(payload), stream, indent=2, allow_nan=False)
    stream.write("\n")


def records(columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> list[dict[str, Any]]:
    return [dict(zip(columns, row, strict=True)) for row in rows]
