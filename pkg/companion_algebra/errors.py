"""Exception types shared across the package.

Three families matter to callers:

- ParseError: the input text could not be understood.
- DomainError: the input parsed but violates a precondition of the operation.
- InvariantViolation: a computation contradicted a proven identity. This is
  always a bug in the library, never a user mistake.
"""

from typing import Any, Dict, Optional


class CompanionAlgebraError(Exception):
    """Base class for all package errors."""


class ParseError(CompanionAlgebraError, ValueError):
    """Malformed polynomial, ring spec, word or JSON input."""


class DomainError(CompanionAlgebraError, ValueError):
    """Operation precondition not met (ring, degree, unit test, ...)."""


class RingMismatchError(DomainError):
    """Elements of two different rings were combined."""


class InvariantViolation(CompanionAlgebraError, AssertionError):
    """A theorem-backed check failed.

    Attributes:
        dump: Inputs and both sides of the failed comparison, rendered as
            strings so they can be printed or logged verbatim.
    """

    def __init__(self, message: str, dump: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.dump: Dict[str, Any] = dict(dump or {})

    def format_dump(self) -> str:
        """Format the diagnostic dump as ``key: value`` lines."""
        lines = [str(self)]
        for key, value in self.dump.items():
            lines.append(f"  {key}: {value}")
        return "\n".join(lines)
