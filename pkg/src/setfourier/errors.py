"""Exception hierarchy shared by every module."""
from __future__ import annotations


class SetFourierError(Exception):
    """Base class for all library errors."""


class ValidationError(SetFourierError, ValueError):
    """Input violates a documented precondition."""


class SizeError(ValidationError):
    """A group or object exceeds the configured maximum size."""


class ResourceError(SetFourierError):
    """An enumeration would exceed its configured budget.

    ``lower_bound`` carries the best value found before the search was cut
    off, when the operation is a maximisation that can report one.
    """

    def __init__(self, message: str, lower_bound=None):
        super().__init__(message)
        self.lower_bound = lower_bound


class ExactnessError(SetFourierError, ArithmeticError):
    """A floating-point route could not certify an integer result."""
