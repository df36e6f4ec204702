"""
Tests for the Input Validators Module
=====================================

Parameterized tests for the LBYL helpers applied to command-line input.
"""

from fractions import Fraction

import pytest

from zeta_forge.input_validators import (
    MAX_DIGITS,
    parse_param_pairs,
    parse_terms_schedule,
    validate_digits,
    validate_param_pairs,
    validate_positive_rational,
    validate_rational,
    validate_terms,
    validate_terms_schedule,
)


# ---------------------------------------------------------------------------
# Digits and term counts
# ---------------------------------------------------------------------------


class TestValidateDigits:
    """Tests for validate_digits."""

    @pytest.mark.parametrize("value", [15, "50", " 100 ", MAX_DIGITS])
    def test_valid(self, value) -> None:
        assert validate_digits(value) is None

    @pytest.mark.parametrize("value", [14, 0, MAX_DIGITS + 1, "abc", "12.5", True])
    def test_invalid(self, value) -> None:
        error = validate_digits(value)
        assert error is not None
        assert error.startswith("Error:")


class TestValidateTerms:
    """Tests for validate_terms."""

    @pytest.mark.parametrize("value", [1, "10", 10 ** 7])
    def test_valid(self, value) -> None:
        assert validate_terms(value) is None

    @pytest.mark.parametrize("value", [0, -3, 10 ** 7 + 1, "x"])
    def test_invalid(self, value) -> None:
        assert validate_terms(value) is not None

    def test_custom_minimum(self) -> None:
        assert validate_terms(2, minimum=3) is not None
        assert validate_terms(3, minimum=3) is None


class TestTermsSchedule:
    """Tests for validate_terms_schedule and parse_terms_schedule."""

    @pytest.mark.parametrize("text", ["10,100,1000", "5", " 10 , 20 ", "10,,20"])
    def test_valid(self, text: str) -> None:
        assert validate_terms_schedule(text) is None

    @pytest.mark.parametrize("text", ["", " , ", ","])
    def test_empty(self, text: str) -> None:
        assert "empty" in validate_terms_schedule(text)

    @pytest.mark.parametrize("text", ["10,abc", "10,0", "-5"])
    def test_invalid_item(self, text: str) -> None:
        assert validate_terms_schedule(text) is not None

    def test_parse_sorts_and_dedupes(self) -> None:
        assert parse_terms_schedule("100, 10,100,1000") == [10, 100, 1000]


# ---------------------------------------------------------------------------
# Formula parameters
# ---------------------------------------------------------------------------


class TestParamPairs:
    """Tests for validate_param_pairs and parse_param_pairs."""

    @pytest.mark.parametrize("pairs", [[], ["k=3"], ["k=3", "j=-1"], [" k=10 "]])
    def test_valid(self, pairs: list[str]) -> None:
        assert validate_param_pairs(pairs) is None

    @pytest.mark.parametrize("pairs", [["k"], ["k=3.5"], ["=3"], ["3k=1"], ["k=three"]])
    def test_malformed(self, pairs: list[str]) -> None:
        assert "Invalid parameter" in validate_param_pairs(pairs)

    def test_duplicate(self) -> None:
        assert "more than once" in validate_param_pairs(["k=3", "k=4"])

    def test_parse(self) -> None:
        assert parse_param_pairs(["k=3", " j=-2 "]) == {"k": 3, "j": -2}


# ---------------------------------------------------------------------------
# Rationals
# ---------------------------------------------------------------------------


class TestRationals:
    """Tests for validate_rational and validate_positive_rational."""

    @pytest.mark.parametrize(
        "text, expected",
        [("1/16", Fraction(1, 16)), ("0.25", Fraction(1, 4)), (" 3 ", Fraction(3)), ("-1/2", Fraction(-1, 2))],
    )
    def test_rational(self, text: str, expected: Fraction) -> None:
        assert validate_rational(text) == expected

    @pytest.mark.parametrize("text", ["abc", "1/0", ""])
    def test_not_rational(self, text: str) -> None:
        assert validate_rational(text) is None

    def test_positive(self) -> None:
        assert validate_positive_rational("1/2", "h") is None
        assert "must be positive" in validate_positive_rational("0", "h")
        assert "not a valid number for h" in validate_positive_rational("x", "h")
