"""Typed errors raised across the package.

Every failure mode that callers are expected to handle gets its own class;
the CLI maps them onto exit codes (usage errors -> 2, resource errors -> 3).
"""


class PParityError(Exception):
    """Base class for all package errors."""


class RingMismatchError(PParityError):
    """Two series over different coefficient rings were combined."""


class PrecisionExhaustedError(PParityError):
    """An operation would produce a series with an empty coefficient window."""


class NonUnitError(PParityError):
    """Leading coefficient is not a unit, so the series cannot be inverted."""


class DomainError(PParityError):
    """An argument is outside the operation's stated domain."""


class ResourceLimitError(PParityError):
    """A computation exceeded a configured size limit."""

    def __init__(self, message: str, attempted: int | None = None):
        super().__init__(message)
        self.attempted = attempted


class CacheFormatError(PParityError):
    """A cache file failed validation; `field` names the offending header field."""

    def __init__(self, field: str, message: str | None = None):
        super().__init__(message or f"bad {field}")
        self.field = field


class StreamTooShortError(PParityError):
    """A residue stream does not cover the indices a search needs."""

    def __init__(self, message: str, required: int | None = None):
        super().__init__(message)
        self.required = required
