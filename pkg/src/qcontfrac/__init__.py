"""Exact truncated q-series, continued fractions and partition oracles."""

from .errors import ConvergenceError, DomainError, UsageError
from .qseries import ParamPoly, QSeries

__all__ = ["ConvergenceError", "DomainError", "ParamPoly", "QSeries", "UsageError"]
__version__ = "0.1.0"
