"""
Linear Systems Module
=====================

Truncations of the infinite upper-triangular system satisfied by the
odd-argument values alpha(3), alpha(5), alpha(7), ... where

    alpha(m) = (1 - 2^-m) zeta(m) = sum_{i>=1} A(r, i) alpha(m + 2i),   m = 2r + 1,
    A(r, i)  = C(2r + 2i, 2r) / (4^i (4^r - 1)).

Keeping n unknowns leaves a tail on the right-hand side; ``TailModel``
decides what replaces it.  The same construction with zeta in place of
alpha uses the coefficients

    Abar(r, i) = (2^(2(r+i)+1) - 1) C(2r + 2i, 2r) / (16^i (4^r - 1) (2^(2r+1) - 1)).

Matrices are exact ``Fraction`` objects; only the oracle tail is real.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import comb

import mpmath as mp

from zeta_forge.exceptions import DomainError, InconsistencyError, InvalidParameterError
from zeta_forge.precision import PrecisionContext, to_decimal_string, to_mpf, zeta_working

logger = logging.getLogger("zeta_forge.linear_systems")

MAX_SIZE = 64


class TailModel(str, Enum):
    """Replacement for the truncated unknowns alpha(2n+3), alpha(2n+5), ...

    - zeros: all dropped
    - ones: all replaced by 1, summed exactly
    - leading_one: only the single next term, with its value replaced by 1
    - oracle: reference values
    """

    ZEROS = "zeros"
    ONES = "ones"
    LEADING_ONE = "leading_one"
    ORACLE = "oracle"


class Family(str, Enum):
    ALPHA = "alpha"
    ZETA = "zeta"


# ---------------------------------------------------------------------------
# Coefficients
# ---------------------------------------------------------------------------


@lru_cache(maxsize=4096)
def coefficient(r: int, i: int, family: Family = Family.ALPHA) -> Fraction:
    """A(r, i) (alpha) or Abar(r, i) (zeta), exactly.

    Raises:
        DomainError: If r < 1 or i < 1.
    """
    if r < 1 or i < 1:
        raise DomainError(f"Coefficients need r >= 1 and i >= 1, got r={r}, i={i}.")
    binomial = comb(2 * r + 2 * i, 2 * r)
    if Family(family) is Family.ALPHA:
        return Fraction(binomial, 4 ** i * (4 ** r - 1))
    return Fraction(
        (2 ** (2 * (r + i) + 1) - 1) * binomial,
        16 ** i * (4 ** r - 1) * (2 ** (2 * r + 1) - 1),
    )


def _even_binomial_series(r: int, z: Fraction) -> Fraction:
    """sum_{i>=1} C(2r + 2i, 2r) z^(2i), from the even part of (1 - z)^-(2r+1)."""
    p = 2 * r + 1
    return ((1 / (1 - z)) ** p + (1 / (1 + z)) ** p) / 2 - 1


@lru_cache(maxsize=1024)
def row_total(r: int, family: Family = Family.ALPHA) -> Fraction:
    """sum_{i>=1} of the row-r coefficients."""
    half, quarter = Fraction(1, 2), Fraction(1, 4)
    if Family(family) is Family.ALPHA:
        return _even_binomial_series(r, half) / (4 ** r - 1)
    numerator = 2 ** (2 * r + 1) * _even_binomial_series(r, half) - _even_binomial_series(r, quarter)
    return numerator / ((4 ** r - 1) * (2 ** (2 * r + 1) - 1))


def tail_ones(r: int, n: int, family: Family = Family.ALPHA) -> Fraction:
    """sum_{i > n - r} of the row-r coefficients, exactly."""
    head = sum((coefficient(r, i, family) for i in range(1, n - r + 1)), Fraction(0))
    return row_total(r, family) - head


def _target_value(m: int, family: Family) -> mp.mpf:
    """alpha(m) or zeta(m) at the current precision."""
    zeta = zeta_working(m, PrecisionContext(mp.mp.dps, 0))
    return (1 - mp.mpf(2) ** -m) * zeta if family is Family.ALPHA else zeta


def tail_oracle(r: int, n: int, family: Family, ctx: PrecisionContext) -> mp.mpf:
    """sum_{i > n - r} coefficient(r, i) value(2r + 2i + 1) at working precision.

    Summed as the exact ones-tail plus corrections value - 1, which decay
    geometrically.
    """
    with ctx.workdps():
        total = to_mpf(tail_ones(r, n, family))
        threshold = ctx.tolerance(-ctx.guard - 5)
        i = n - r + 1
        while True:
            term = to_mpf(coefficient(r, i, family)) * (_target_value(2 * r + 2 * i + 1, family) - 1)
            total += term
            if abs(term) < threshold or i > n + 20 * ctx.working_digits:
                return total
            i += 1


# ---------------------------------------------------------------------------
# Systems
# ---------------------------------------------------------------------------


def _check_size(n: int, minimum: int = 2) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or not minimum <= n <= MAX_SIZE:
        raise InvalidParameterError(f"System size must be in [{minimum}, {MAX_SIZE}], got {n!r}.")


@dataclass(frozen=True)
class TriangularSystem:
    """K x = v with unit diagonal and K[r][c] = -coefficient(r, c - r) above it.

    Rows and columns are 1-based in the documentation and 0-based in
    ``matrix``; unknown r is alpha(2r + 1) (or zeta(2r + 1)).
    """

    size: int
    family: Family
    tail_model: TailModel
    matrix: tuple[tuple[Fraction, ...], ...]
    rhs: tuple

    @property
    def exact(self) -> bool:
        return all(isinstance(v, Fraction) for v in self.rhs)

    def to_dict(self, ctx: PrecisionContext) -> dict:
        def show(value) -> str:
            return str(value) if isinstance(value, Fraction) else to_decimal_string(value, ctx)

        return {
            "size": self.size,
            "family": self.family.value,
            "tail_model": self.tail_model.value,
            "matrix": [[str(v) for v in row] for row in self.matrix],
            "rhs": [show(v) for v in self.rhs],
        }


def system_matrix(n: int, family: Family = Family.ALPHA) -> tuple[tuple[Fraction, ...], ...]:
    """The n x n truncation K_n."""
    _check_size(n, minimum=1)
    rows = []
    for r in range(1, n + 1):
        rows.append(tuple(
            Fraction(1) if c == r else (-coefficient(r, c - r, family) if c > r else Fraction(0))
            for c in range(1, n + 1)
        ))
    return tuple(rows)


def build_system(
    n: int,
    tail_model: TailModel | str,
    ctx: PrecisionContext | None = None,
    family: Family | str = Family.ALPHA,
) -> TriangularSystem:
    """Truncated system with n unknowns and the chosen tail.

    Raises:
        InvalidParameterError: If n is out of range, or the oracle tail is
            requested without a precision context.
    """
    _check_size(n)
    tail_model, family = TailModel(tail_model), Family(family)
    if tail_model is TailModel.ZEROS:
        rhs = tuple(Fraction(0) for _ in range(n))
    elif tail_model is TailModel.ONES:
        rhs = tuple(tail_ones(r, n, family) for r in range(1, n + 1))
    elif tail_model is TailModel.LEADING_ONE:
        rhs = tuple(coefficient(r, n + 1 - r, family) for r in range(1, n + 1))
    else:
        if ctx is None:
            raise InvalidParameterError("The oracle tail needs a precision context.")
        rhs = tuple(tail_oracle(r, n, family, ctx) for r in range(1, n + 1))
    return TriangularSystem(n, family, tail_model, system_matrix(n, family), rhs)


def back_substitute(system: TriangularSystem) -> list:
    """Solve K x = v from the last row up; exact when v is rational."""
    n = system.size
    x: list = [None] * n
    for r in range(n - 1, -1, -1):
        if system.exact:
            acc = system.rhs[r] - sum(
                (system.matrix[r][c] * x[c] for c in range(r + 1, n)), Fraction(0)
            )
        else:
            acc = system.rhs[r] - mp.fsum(to_mpf(system.matrix[r][c]) * x[c] for c in range(r + 1, n))
        x[r] = acc
    return x


def solve_alpha3(
    n: int,
    tail_model: TailModel | str,
    ctx: PrecisionContext,
    family: Family | str = Family.ALPHA,
) -> mp.mpf:
    """First component of the solution: the approximation to alpha(3) (or zeta(3))."""
    system = build_system(n, tail_model, ctx, family)
    with ctx.workdps():
        first = back_substitute(system)[0]
        value = to_mpf(first) if isinstance(first, Fraction) else first
    logger.debug("Solved %s system n=%d with %s tail", system.family.value, n, system.tail_model.value)
    return ctx.round(value)


# ---------------------------------------------------------------------------
# First row of the inverse
# ---------------------------------------------------------------------------


def _chains(start: int, end: int, steps: int, family: Family) -> Fraction:
    """Sum over start = c0 < c1 < ... < c_steps = end of prod coefficient(c_t, c_{t+1} - c_t)."""
    if steps == 1:
        return coefficient(start, end - start, family)
    total = Fraction(0)
    for mid in range(start + 1, end - steps + 2):
        total += coefficient(start, mid - start, family) * _chains(mid, end, steps - 1, family)
    return total


def b_term(k: int, n: int, family: Family = Family.ALPHA) -> Fraction:
    """B(k, n): products of k coefficients along index chains from 1 to n.

    B(1, n) is the single coefficient A(1, n - 1); B(k, n) = 0 for k >= n.
    """
    if k < 1 or n < 2:
        raise DomainError(f"B(k, n) needs k >= 1 and n >= 2, got k={k}, n={n}.")
    if k >= n:
        return Fraction(0)
    return _chains(1, n, k, Family(family))


def u_row(n: int, family: Family | str = Family.ALPHA) -> list[Fraction]:
    """U(1..n) with U(1) = 1 and U(m) = sum_{k<m} B(k, m)."""
    _check_size(n, minimum=1)
    family = Family(family)
    return [Fraction(1)] + [
        sum((b_term(k, m, family) for k in range(1, m)), Fraction(0)) for m in range(2, n + 1)
    ]


def first_row_inverse(n: int, family: Family | str = Family.ALPHA) -> list[Fraction]:
    """First row of K_n^-1 by Gauss-Jordan elimination on [K_n | I]."""
    matrix = [list(row) for row in system_matrix(n, Family(family))]
    inverse = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if matrix[r][col] != 0), None)
        if pivot is None:
            raise InconsistencyError("Truncated system matrix is singular.")
        matrix[col], matrix[pivot] = matrix[pivot], matrix[col]
        inverse[col], inverse[pivot] = inverse[pivot], inverse[col]
        scale = matrix[col][col]
        matrix[col] = [v / scale for v in matrix[col]]
        inverse[col] = [v / scale for v in inverse[col]]
        for r in range(n):
            if r != col and matrix[r][col] != 0:
                factor = matrix[r][col]
                matrix[r] = [a - factor * b for a, b in zip(matrix[r], matrix[col])]
                inverse[r] = [a - factor * b for a, b in zip(inverse[r], inverse[col])]
    return inverse[0]
