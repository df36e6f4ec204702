"""
Input Validators Module (LBYL)
===============================

Look-Before-You-Leap checks for command-line input, applied *before* any
numeric work starts.  Each ``validate_*`` function returns an error
message string, or ``None`` when the input is acceptable; the matching
``parse_*`` function may then be called safely.
"""

from __future__ import annotations

import re
from fractions import Fraction

from zeta_forge.precision import MIN_DIGITS

_PARAM_PATTERN = re.compile(r"^([A-Za-z_]\w*)=(-?\d+)$")
MAX_DIGITS = 10000
MAX_TERMS = 10 ** 7


def validate_digits(value: int | str) -> str | None:
    """Check a requested precision in decimal digits."""
    number = _as_int(value)
    if number is None:
        return f"Error: '{value}' is not a valid number of digits."
    if not MIN_DIGITS <= number <= MAX_DIGITS:
        return f"Error: Digits must be between {MIN_DIGITS} and {MAX_DIGITS}, got {number}."
    return None


def validate_terms(value: int | str, minimum: int = 1) -> str | None:
    """Check a single term count (or order, or size)."""
    number = _as_int(value)
    if number is None:
        return f"Error: '{value}' is not a valid integer."
    if not minimum <= number <= MAX_TERMS:
        return f"Error: Value must be between {minimum} and {MAX_TERMS}, got {number}."
    return None


def validate_terms_schedule(text: str) -> str | None:
    """Check a comma-separated list of term counts such as ``10,100,1000``."""
    items = [item.strip() for item in text.split(",") if item.strip()]
    if not items:
        return "Error: The terms schedule is empty. Example: --terms-schedule 10,100,1000"
    for item in items:
        error = validate_terms(item)
        if error:
            return error
    return None


def parse_terms_schedule(text: str) -> list[int]:
    """Sorted, de-duplicated term counts from a validated schedule."""
    return sorted({int(item) for item in text.split(",") if item.strip()})


def validate_param_pairs(pairs: list[str]) -> str | None:
    """Check ``name=value`` formula parameters (integers only)."""
    seen: set[str] = set()
    for pair in pairs:
        match = _PARAM_PATTERN.match(pair.strip())
        if match is None:
            return f"Error: Invalid parameter '{pair}'. Use name=integer, e.g. k=3."
        name = match.group(1)
        if name in seen:
            return f"Error: Parameter '{name}' given more than once."
        seen.add(name)
    return None


def parse_param_pairs(pairs: list[str]) -> dict[str, int]:
    params: dict[str, int] = {}
    for pair in pairs:
        name, raw = pair.strip().split("=", 1)
        params[name] = int(raw)
    return params


def validate_rational(value: str) -> Fraction | None:
    """Try to read *value* as an exact rational (``1/16``, ``0.25``, ``3``).

    Returns:
        A ``Fraction`` on success, or ``None`` on failure.
    """
    try:
        return Fraction(value.strip())
    except (ValueError, ZeroDivisionError):
        return None


def validate_positive_rational(value: str, name: str) -> str | None:
    number = validate_rational(value)
    if number is None:
        return f"Error: '{value}' is not a valid number for {name}."
    if number <= 0:
        return f"Error: {name} must be positive, got {value}."
    return None


def _as_int(value: int | str) -> int | None:
    if isinstance(value, bool):
        return None
    if isinstance(value, int):
        return value
    try:
        return int(str(value).strip())
    except ValueError:
        return None
