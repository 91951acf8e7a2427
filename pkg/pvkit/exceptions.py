"""
Exception hierarchy for pvkit.

Mathematical negatives (not gauge equivalent, not a cocycle candidate that
happens to fail a check, undecided) are return values. These exceptions are
reserved for malformed input and for requests outside what an operation can
answer.
"""

from typing import Optional


class PvkitError(Exception):
    """Base class for every error raised by pvkit."""

    def __init__(self, message: str, source: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.source = source

    def to_dict(self) -> dict:
        data = {"kind": type(self).__name__, "reason": self.message}
        if self.source:
            data["file"] = self.source
        return data


class ParseError(PvkitError):
    """Malformed rational-function expression."""

    def __init__(self, message: str, position: int, source: Optional[str] = None):
        super().__init__(message, source)
        self.position = position

    def __str__(self) -> str:
        return f"{self.message} at position {self.position}"

    def to_dict(self) -> dict:
        data = super().to_dict()
        data["position"] = self.position
        return data


class InputError(PvkitError):
    """An input file or job description is structurally invalid."""


class DimensionMismatchError(PvkitError):
    """Matrix or module dimensions do not agree."""


class SingularMatrixError(PvkitError):
    """A matrix that must be invertible is not."""


class DegreeLimitError(PvkitError):
    """A polynomial exceeds the configured factorization degree limit."""


class ConstantsFieldError(PvkitError):
    """The constants field lacks the roots of unity an operation needs."""


class UnsupportedTargetError(PvkitError):
    """The requested cohomology computation is outside the supported targets."""


class DescentError(PvkitError):
    """Coinvariants do not carry the expected structure."""


class CocycleError(PvkitError):
    """A computed family fails the cocycle identity."""


class TwistedFormError(PvkitError):
    """A twisted-form description is not a Phi_S-isomorphism or is not constant."""
