"""Exception hierarchy shared across the package.

The CLI maps each family to a fixed exit code, so new failure modes should
subclass one of these rather than raising bare built-ins.
"""

from __future__ import annotations


class PuntuaError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class ValidationError(PuntuaError, ValueError):
    """Input violates a documented invariant (label slot, range, charset)."""


class StructuralError(ValidationError):
    """Parallel sequences disagree in length or shape."""


class ParseError(ValidationError):
    """A record in a prediction file could not be decoded.

    ``line`` is 1-based; ``field`` is a dotted/indexed path such as
    ``lexical[3].trail``.
    """

    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field:
            where.append(field)
        prefix = ": ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)


class ConfigurationError(PuntuaError):
    exit_code = 2


class EndpointError(PuntuaError):
    """Every request to an external LLM endpoint failed."""

    exit_code = 3
