"""
Exceptions raised by the laboratory.

Every error carries the process exit code the command line maps it to.
"""
from typing import Any, Dict, Optional


class LabError(Exception):
    """Base exception for laboratory errors."""
    exit_code: int = 1


class InvalidInputError(LabError, ValueError):
    """Parameters, profiles, messages or files violate a model assumption."""
    exit_code = 2


class SolverFailureError(LabError):
    """A numerical routine did not reach its tolerance within its budget."""
    exit_code = 3

    def __init__(self, message: str, residuals: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.residuals: Dict[str, Any] = residuals or {}


class ConsistencyError(SolverFailureError):
    """An enumeration produced a result the model assumptions rule out."""


class OracleResolutionWarning(UserWarning):
    """The brute-force grid is too coarse or too small to resolve the optimum."""
