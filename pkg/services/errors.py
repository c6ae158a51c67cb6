"""
Exception hierarchy shared by the numerical services.

Singular evaluations and invalid orders subclass ``ValueError`` so callers
that only guard against bad input keep working; truncated series that miss
their tolerance raise ``ConvergenceError``.
"""


class RevivalError(Exception):
    """Base class for all library errors."""


class SingularityError(RevivalError, ValueError):
    """
    Evaluation at or too close to a node, pole or logarithmic singularity.

    Args:
        message: Human readable description
        location: The requested evaluation point
        nearest: The singular point that triggered the rejection
    """

    def __init__(self, message: str, location: float, nearest: float):
        super().__init__(message)
        self.location = location
        self.nearest = nearest


class InvalidOrderError(RevivalError, ValueError):
    """Polylogarithm order outside the supported range."""


class ConvergenceError(RevivalError, ArithmeticError):
    """A truncated series or quadrature missed its requested tolerance."""
