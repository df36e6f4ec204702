"""
Dynamic Sums Module
===================

Elementary terms written as sign sequences, the exact transformation
matrices M_n, and the dynamic sums

    S_n = sum_{i=1}^{2^(n-2)} (2^n sin((2i-1) pi / 2^n))^(-3)

evaluated three ways (direct sine sum, nested radicals, matrix times the
elementary-term basis).  ``(8 pi^3 / 7) S_n`` tends to zeta(3).

Sign sequences are listed outermost radical first: ``"(- +)"`` is
``sqrt(2 - sqrt(2 + sqrt 2))``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

import mpmath as mp

from zeta_forge.exceptions import ConfigurationError, DomainError, InconsistencyError
from zeta_forge.precision import ConstantId, PrecisionContext, constant_working

logger = logging.getLogger("zeta_forge.dynamic_sums")

MIN_MATRIX_DEPTH = 3
MAX_MATRIX_DEPTH = 12

_SIGN_CHARS = {"+": 1, "-": -1, "−": -1}


# ---------------------------------------------------------------------------
# Sign sequences
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SignSequence:
    """Signs (+1 / -1) of a nested radical, outermost first."""

    signs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if any(s not in (1, -1) for s in self.signs):
            raise DomainError(f"Signs must be +1 or -1, got {self.signs}.")

    @classmethod
    def parse(cls, text: str) -> "SignSequence":
        """Parse ``"(- + +)"``, ``"-++"`` or ``"()"``.

        Raises:
            DomainError: On any character other than signs, spaces and parentheses.
        """
        body = text.strip()
        if body.startswith("("):
            if not body.endswith(")"):
                raise DomainError(f"Unbalanced parentheses in sign sequence '{text}'.")
            body = body[1:-1]
        signs = []
        for char in body:
            if char.isspace():
                continue
            if char not in _SIGN_CHARS:
                raise DomainError(f"Invalid character '{char}' in sign sequence '{text}'.")
            signs.append(_SIGN_CHARS[char])
        return cls(tuple(signs))

    @property
    def depth(self) -> int:
        return len(self.signs)

    @property
    def compact(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self.signs)

    def __str__(self) -> str:
        return "(" + " ".join("+" if s > 0 else "-" for s in self.signs) + ")"


def angle_of(seq: SignSequence) -> Fraction:
    """Return q with ``elementary_value(seq) == 2 sin(q pi)``."""
    q = Fraction(1, 4)
    for sign in reversed(seq.signs):
        q = Fraction(1, 4) + sign * q / 2
    return q


def elementary_value(seq: SignSequence, ctx: PrecisionContext) -> mp.mpf:
    """Evaluate the nested radical innermost-out at working precision."""
    with ctx.workdps():
        value = mp.sqrt(2)
        for sign in reversed(seq.signs):
            value = mp.sqrt(2 + sign * value)
        return value


def seq_of_angle(i: int, n: int) -> SignSequence:
    """Inverse of ``angle_of`` for the angle ``i pi / 2^n``.

    Raises:
        DomainError: If i is even, outside [1, 2^(n-1)], or n < 2.
    """
    if n < 2:
        raise DomainError(f"Depth index must be at least 2, got {n}.")
    if i < 1 or i % 2 == 0 or i > 2 ** (n - 1):
        raise DomainError(f"Angle index must be odd and in [1, {2 ** (n - 1)}], got {i}.")
    q = Fraction(i, 2 ** n)
    quarter = Fraction(1, 4)
    signs = []
    while q != quarter:
        sign = 1 if q > quarter else -1
        signs.append(sign)
        q = 2 * abs(q - quarter)
    return SignSequence(tuple(signs))


def sign_of(seq: SignSequence) -> int:
    """(-1)^(k+1) where k counts the '-' signs."""
    minus_count = sum(1 for s in seq.signs if s < 0)
    return 1 if minus_count % 2 else -1


def minimal_poly_eval(n: int, x, ctx: PrecisionContext) -> mp.mpf:
    """p_n(x): n-fold iteration of y -> y^2 - 2."""
    if n < 1:
        raise DomainError(f"Minimal polynomial index must be positive, got {n}.")
    with ctx.workdps():
        y = mp.mpf(x)
        for _ in range(n):
            y = y * y - 2
        return y


# ---------------------------------------------------------------------------
# Transformation matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TransformMatrix:
    """Exact integer matrix mapping elementary terms to inverse-cube terms."""

    n: int
    entries: tuple[tuple[int, ...], ...]
    scale: Fraction = Fraction(1, 2)

    @property
    def dimension(self) -> int:
        return len(self.entries)

    def row(self, i: int) -> tuple[int, ...]:
        """1-based row access."""
        return self.entries[i - 1]

    def column_sums(self) -> tuple[int, ...]:
        return tuple(sum(col) for col in zip(*self.entries))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "scale": f"{self.scale.numerator}/{self.scale.denominator}",
            "entries": [list(row) for row in self.entries],
        }


def _check_matrix_depth(n: int) -> None:
    if not MIN_MATRIX_DEPTH <= n <= MAX_MATRIX_DEPTH:
        raise ConfigurationError(
            f"Matrix depth must be in [{MIN_MATRIX_DEPTH}, {MAX_MATRIX_DEPTH}], got {n}."
        )


def _magnitude(big_n: int, r: int) -> int:
    return (2 * big_n * r - r * r + r - big_n) // 2


@lru_cache(maxsize=None)
def make_transform_matrix(n: int) -> TransformMatrix:
    """Build M_n with the modular-inverse construction.

    Raises:
        ConfigurationError: If n is outside [3, 12].
    """
    _check_matrix_depth(n)
    big_n = 2 ** (n - 2)
    modulus = 2 * big_n
    rows = []
    for i in range(1, big_n + 1):
        a = 2 * i - 1
        inverse = pow(a, big_n - 1, modulus)
        row = []
        for j in range(1, big_n + 1):
            b = i + j - 1
            r = (b * inverse) % modulus
            parity = ((r * a - b) // modulus) % 2
            value = _magnitude(big_n, r)
            row.append(-value if parity else value)
        rows.append(tuple(row))
    logger.debug("Built transform matrix of depth %d (%d x %d)", n, big_n, big_n)
    return TransformMatrix(n=n, entries=tuple(rows))


def matrix_entry_closed_form(n: int, i: int, j: int) -> int:
    """Entry (i, j) of M_n from the mod-4N sign rule, 1-based indices."""
    _check_matrix_depth(n)
    big_n = 2 ** (n - 2)
    if not (1 <= i <= big_n and 1 <= j <= big_n):
        raise DomainError(f"Indices ({i}, {j}) outside 1..{big_n}.")
    t = ((i + j - 1) * pow(2 * i - 1, big_n - 1, 4 * big_n)) % (4 * big_n)
    negative = t // (2 * big_n) == 1
    r = t % (2 * big_n)
    value = ((2 * big_n + 1) * r - r * r - big_n) // 2
    return -value if negative else value


def transform_matrix_from_placement(n: int) -> TransformMatrix:
    """Build M_n by placing each coefficient at its reduced sine argument.

    Row i expands (2 sin((2i-1) pi / 2^n))^-3; coefficient j lands on the
    elementary term whose angle is (2p - 1) pi / 2^n, p = 2ij - i - j + 1,
    folded into the first quadrant.

    Raises:
        InconsistencyError: If two coefficients land on the same column.
    """
    _check_matrix_depth(n)
    big_n = 2 ** (n - 2)
    modulus = 2 * big_n
    rows = []
    for i in range(1, big_n + 1):
        row: dict[int, int] = {}
        for j in range(1, big_n + 1):
            p = 2 * i * j - i - j + 1
            k = (p - 1) % modulus + 1
            sign = -1 if ((p - k) // modulus) % 2 else 1
            column = k if k <= big_n else modulus + 1 - k
            if column in row:
                raise InconsistencyError(f"Placement collision in row {i}, column {column}.")
            row[column] = sign * _magnitude(big_n, j)
        rows.append(tuple(row[c] for c in range(1, big_n + 1)))
    return TransformMatrix(n=n, entries=tuple(rows))


# ---------------------------------------------------------------------------
# Dynamic sums
# ---------------------------------------------------------------------------


class Route(str, Enum):
    DIRECT_SINE = "direct_sine"
    NESTED_RADICAL = "nested_radical"
    MATRIX_BASIS = "matrix_basis"


@dataclass(frozen=True)
class DynamicSumResult:
    n: int
    value: mp.mpf
    route: Route


def _elementary_basis(n: int, ctx: PrecisionContext) -> list[mp.mpf]:
    return [elementary_value(seq_of_angle(2 * j - 1, n), ctx) for j in range(1, 2 ** (n - 2) + 1)]


def _direct_terms(n: int, ctx: PrecisionContext) -> list[mp.mpf]:
    """(2 sin((2i-1) pi / 2^n))^-3 for i = 1..2^(n-2)."""
    with ctx.workdps():
        pi = constant_working(ConstantId.PI, ctx)
        return [
            (2 * mp.sin((2 * i - 1) * pi / 2 ** n)) ** -3
            for i in range(1, 2 ** (n - 2) + 1)
        ]


def _dynamic_sum_working(n: int, route: Route, ctx: PrecisionContext) -> mp.mpf:
    if n < 2:
        raise DomainError(f"Dynamic sums need n >= 2, got {n}.")
    route = Route(route)
    with ctx.workdps():
        outer = mp.mpf(2) ** (3 - 3 * n)
        if route is Route.DIRECT_SINE:
            return outer * mp.fsum(_direct_terms(n, ctx))
        if route is Route.NESTED_RADICAL:
            return outer * mp.fsum(e ** -3 for e in _elementary_basis(n, ctx))
        if n < MIN_MATRIX_DEPTH:
            raise DomainError(f"The matrix_basis route needs n >= 3, got {n}.")
        matrix = make_transform_matrix(n)
        basis = _elementary_basis(n, ctx)
        total = mp.fsum(c * e for c, e in zip(matrix.column_sums(), basis))
        return outer * matrix.scale.numerator * total / matrix.scale.denominator


def dynamic_sum(n: int, route: Route | str, ctx: PrecisionContext) -> DynamicSumResult:
    """S_n by the selected route, rounded to ``ctx.digits``.

    Raises:
        DomainError: If n < 2, or n < 3 for the matrix_basis route.
        ConfigurationError: If the matrix_basis route is asked for n > 12.
    """
    value = _dynamic_sum_working(n, Route(route), ctx)
    return DynamicSumResult(n=n, value=ctx.round(value), route=Route(route))


def zeta3_from_dynamic(n: int, ctx: PrecisionContext, route: Route | str = Route.DIRECT_SINE) -> mp.mpf:
    """(8 pi^3 / 7) S_n."""
    s_n = _dynamic_sum_working(n, Route(route), ctx)
    with ctx.workdps():
        pi = constant_working(ConstantId.PI, ctx)
        value = 8 * pi ** 3 / 7 * s_n
    return ctx.round(value)


def basis_change_residuals(n: int, ctx: PrecisionContext) -> list[mp.mpf]:
    """|scale * (M_n e)_i - (2 sin((2i-1) pi / 2^n))^-3| for every row i."""
    matrix = make_transform_matrix(n)
    basis = _elementary_basis(n, ctx)
    targets = _direct_terms(n, ctx)
    residuals = []
    with ctx.workdps():
        scale = mp.mpf(matrix.scale.numerator) / matrix.scale.denominator
        for row, target in zip(matrix.entries, targets):
            image = scale * mp.fsum(c * e for c, e in zip(row, basis))
            residuals.append(abs(image - target))
    return residuals


def related_function(n: int, x, ctx: PrecisionContext) -> mp.mpf:
    """F_n(x): the matrix-basis sum with each elementary term replaced by its
    elementary function of x.  F_n(sqrt(2)/2) = S_n.
    """
    # imported here; continued_roots builds on this module
    from zeta_forge.continued_roots import elementary_function

    matrix = make_transform_matrix(n)
    with ctx.workdps():
        terms = [
            elementary_function(seq_of_angle(2 * j - 1, n), x, ctx)
            for j in range(1, matrix.dimension + 1)
        ]
        total = mp.fsum(c * t for c, t in zip(matrix.column_sums(), terms))
        value = mp.mpf(2) ** (2 - 3 * n) * total
    return ctx.round(value)


def averaged_sum(n: int, ctx: PrecisionContext) -> mp.mpf:
    """S-hat_n = sin(pi/2^(n-1)) / (2^(2n-2) pi) * sum_j colsum_j sin((2j-1) pi / 2^n)."""
    matrix = make_transform_matrix(n)
    with ctx.workdps():
        pi = constant_working(ConstantId.PI, ctx)
        total = mp.fsum(
            c * mp.sin((2 * j - 1) * pi / 2 ** n)
            for j, c in enumerate(matrix.column_sums(), start=1)
        )
        value = mp.sin(pi / 2 ** (n - 1)) / (mp.mpf(2) ** (2 * n - 2) * pi) * total
    return ctx.round(value)
