"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations

from typing import Any


class OkuboError(Exception):
    """Base class for every error raised by okubo."""


class FieldError(OkuboError, ValueError):
    """Malformed field spec, reducible modulus or unsupported field size."""


class FieldMismatchError(FieldError):
    """Operands live in different fields."""


class DegreeOverflowError(FieldError, OverflowError):
    """A rational function exceeded the supported degree."""


class ParseError(OkuboError, ValueError):
    """Text input that does not follow one of the documented formats."""


class PreconditionError(OkuboError, ValueError):
    """An operation was called on input that violates its precondition."""


class NotAnAutomorphismError(PreconditionError):
    def __init__(self, message: str, pair: tuple[int, int] | None = None) -> None:
        super().__init__(message)
        self.pair = pair  # first violating basis pair (i, j), None for singular matrices


class NotIdempotentError(PreconditionError):
    pass


class NotNilpotentError(PreconditionError):
    pass


class WrongCharacteristicError(PreconditionError):
    pass


class SearchExhaustedError(OkuboError, RuntimeError):
    """A bounded lattice search ran out of candidates."""

    def __init__(self, message: str, tried: int = 0) -> None:
        super().__init__(message)
        self.tried = tried


class ClassificationError(OkuboError, RuntimeError):
    """The data is internally inconsistent with every case of a classification."""

    def __init__(self, message: str, detail: Any = None) -> None:
        super().__init__(message)
        self.detail = detail


class InfeasibleError(OkuboError, RuntimeError):
    """No enumeration strategy applies within the configured limits."""
