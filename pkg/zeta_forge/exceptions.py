"""
Exceptions Module
=================

Custom exception hierarchy for the zeta_forge laboratory.

- ZetaForgeError: base exception for all laboratory errors.
- ConfigurationError: raised for invalid settings or precision contexts.
- DomainError: raised when an argument lies outside a function's domain.
- UnknownFormulaError: raised when a catalog or integrand id is not registered.
- InvalidParameterError: raised when formula parameters fail validation.
- AccuracyError: raised when a numeric scheme cannot reach its target accuracy.
- InconsistencyError: raised when two evaluation routes disagree.
- OutputError: raised when results cannot be written.
"""

from __future__ import annotations

from typing import Any


class ZetaForgeError(Exception):
    """Base exception for zeta_forge errors."""


class ConfigurationError(ZetaForgeError):
    """Raised when configuration or a precision context is invalid."""


class DomainError(ZetaForgeError):
    """Raised when an argument is outside the domain of an operation."""


class UnknownFormulaError(ZetaForgeError):
    """Raised when an unknown formula or integrand id is requested."""


class InvalidParameterError(ZetaForgeError):
    """Raised when parameters for a formula are missing or malformed."""


class AccuracyError(ZetaForgeError):
    """Raised when a scheme fails to converge; keeps the best value found."""

    def __init__(self, message: str, best_value: Any = None, error_estimate: Any = None) -> None:
        super().__init__(message)
        self.best_value = best_value
        self.error_estimate = error_estimate


class InconsistencyError(ZetaForgeError):
    """Raised when independent evaluation routes disagree."""


class OutputError(ZetaForgeError):
    """Raised when an output file cannot be written."""
