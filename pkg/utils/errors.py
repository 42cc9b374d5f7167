# utils/errors.py
"""
Exception hierarchy shared by the services, the CLI and the HTTP routes.

Flagged-but-valid numeric results (decay violations, cancellation, experimental
functionals) are reported through ``warnings`` on the result objects and never
raised.
"""

from typing import Optional


class WeylSeriesError(Exception):
    """Base class for every error raised by this package."""


class PoleError(WeylSeriesError, ArithmeticError):
    """Evaluation hit a division by zero."""

    def __init__(self, message: str = "division by zero", point: Optional[complex] = None):
        self.point = point
        if point is not None:
            message = f"{message} at t = {point}"
        super().__init__(message)


class DomainError(WeylSeriesError, ValueError):
    """A point or parameter lies outside the declared domain."""


class ContourError(WeylSeriesError, ValueError):
    """A contour specification violates its precondition."""


class CalibrationError(WeylSeriesError):
    """The calibration residue is numerically zero."""


class ParseError(WeylSeriesError, ValueError):
    """Syntax error in a Weyl-algebra or function expression."""

    def __init__(self, message: str, source: str = "", position: Optional[int] = None):
        self.source = source
        self.position = position
        self.message = message
        super().__init__(self.describe())

    def describe(self) -> str:
        if self.position is None or not self.source:
            return self.message
        caret = " " * self.position + "^"
        return f"{self.message} at position {self.position}\n  {self.source}\n  {caret}"
