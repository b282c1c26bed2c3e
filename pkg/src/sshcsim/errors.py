"""Exceptions raised by sshcsim."""

from __future__ import annotations

from pydantic import ValidationError


class SshcError(Exception):
    """Base exception for sshcsim errors."""

    def __init__(self, message: str, cause: Exception | None = None) -> None:
        super().__init__(message)
        self.cause = cause


class ConfigurationError(SshcError):
    """One or more domain invariants are violated.

    Attributes:
        violations: One human-readable entry per violated invariant
    """

    def __init__(
        self, violations: list[str], cause: Exception | None = None
    ) -> None:
        super().__init__("; ".join(violations), cause)
        self.violations = violations

    @classmethod
    def from_validation_error(cls, error: ValidationError) -> ConfigurationError:
        """Turn every pydantic error into one plain violation message."""
        violations = []
        for item in error.errors():
            message = str(item.get("msg", "")).removeprefix("Value error, ")
            location = ".".join(str(part) for part in item.get("loc", ()))
            if location and location not in message:
                message = f"{location}: {message}"
            violations.append(message)
        return cls(violations, error)


class SweepSpecError(SshcError):
    """A sweep definition cannot be evaluated."""


class TraceError(SshcError):
    """A waveform trace lacks what an analysis needs."""
