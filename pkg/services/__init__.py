"""
Numerical services: polylogarithms, dispersion, evolution, revival profiles,
kernels and the verification suite.
"""

from .errors import ConvergenceError, InvalidOrderError, RevivalError, SingularityError

__all__ = ["ConvergenceError", "InvalidOrderError", "RevivalError", "SingularityError"]
