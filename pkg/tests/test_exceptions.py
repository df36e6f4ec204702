"""
Tests for the Exceptions Module
===============================

Hierarchy checks and the payload carried by AccuracyError.
"""

import pytest

from zeta_forge.exceptions import (
    AccuracyError,
    ConfigurationError,
    DomainError,
    InconsistencyError,
    InvalidParameterError,
    OutputError,
    UnknownFormulaError,
    ZetaForgeError,
)


class TestHierarchy:
    """Every error derives from ZetaForgeError."""

    @pytest.mark.parametrize(
        "exc_class",
        [
            ConfigurationError,
            DomainError,
            UnknownFormulaError,
            InvalidParameterError,
            AccuracyError,
            InconsistencyError,
            OutputError,
        ],
    )
    def test_subclass(self, exc_class) -> None:
        assert issubclass(exc_class, ZetaForgeError)
        with pytest.raises(ZetaForgeError):
            raise exc_class("boom")


class TestAccuracyError:
    """AccuracyError keeps the best value and its error estimate."""

    def test_payload(self) -> None:
        exc = AccuracyError("not converged", best_value=1.2, error_estimate=1e-5)
        assert str(exc) == "not converged"
        assert exc.best_value == 1.2
        assert exc.error_estimate == 1e-5

    def test_defaults(self) -> None:
        exc = AccuracyError("no payload")
        assert exc.best_value is None
        assert exc.error_estimate is None
