"""
Factorial Sums Module
=====================

Exact arithmetic on the factorial ratios

    f(n, j) = (n!)^2 / ((n - j)! (n + j)!)

and the alternating sums built from them.  As n grows f(n, j) -> 1 for
every fixed j, so ``sum (-1)^(j-1) f(n, j) g(j)`` is a regularised value of
the divergent alternating series of g; for g(j) = j^-k the limit is eta(k).

All ratios are ``Fraction`` objects obtained from the recurrence
f(n, j+1) = f(n, j) (n - j) / (n + j + 1); raw factorials are never formed.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

import mpmath as mp

from zeta_forge.exceptions import DomainError
from zeta_forge.precision import PrecisionContext, to_mpf


@lru_cache(maxsize=128)
def factorial_ratio_row(n: int) -> tuple[Fraction, ...]:
    """(f(n, 0), ..., f(n, n))."""
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}.")
    row = [Fraction(1)]
    for j in range(n):
        row.append(row[-1] * Fraction(n - j, n + j + 1))
    return tuple(row)


def factorial_ratio(n: int, j: int) -> Fraction:
    """Exact (n!)^2 / ((n-j)! (n+j)!).

    Raises:
        DomainError: If j < 0 or j > n.
    """
    if j < 0 or j > n:
        raise DomainError(f"factorial_ratio needs 0 <= j <= n, got n={n}, j={j}.")
    return factorial_ratio_row(n)[j]


def gosper_sum(n: int, m: int) -> Fraction:
    """sum_{j=1}^n (-1)^(j-1) f(n, j) j^m, exactly."""
    if n < 1 or m < 0:
        raise DomainError(f"gosper_sum needs n >= 1 and m >= 0, got n={n}, m={m}.")
    row = factorial_ratio_row(n)
    total = Fraction(0)
    for j in range(1, n + 1):
        term = row[j] * j ** m
        total += term if j % 2 else -term
    return total


def gosper_closed_form(n: int, m: int) -> Fraction | None:
    """Closed form of ``gosper_sum(n, m)`` where one is known, else None.

    Odd powers 3 and 7 come out negative and 5 positive; for large n the
    values approach eta(-m) = -1/8, 1/4, -17/16.
    """
    if m == 0:
        return Fraction(1, 2)
    if m % 2 == 0:
        return Fraction(0) if n > m // 2 else None
    odd = [Fraction(2 * n - (2 * k + 1)) for k in range(4)]
    if m == 1:
        return Fraction(n, 2) / odd[0]
    if m == 3:
        return -Fraction(n * n, 2) / (odd[0] * odd[1])
    if m == 5:
        return Fraction(n * n * (4 * n - 1), 2) / (odd[0] * odd[1] * odd[2])
    if m == 7:
        return -Fraction(n * n * (34 * n * n - 24 * n + 5), 2) / (odd[0] * odd[1] * odd[2] * odd[3])
    return None


def eta_factorial_limit(k: int, n: int, ctx: PrecisionContext) -> mp.mpf:
    """sum_{i=1}^n (-1)^(i-1) f(n, i) / i^k; tends to eta(k) (1/2 for k = 0)."""
    if k < 0 or n < 1:
        raise DomainError(f"eta_factorial_limit needs k >= 0 and n >= 1, got k={k}, n={n}.")
    if k == 0:
        return mp.mpf(1) / 2
    row = factorial_ratio_row(n)
    with ctx.workdps():
        total = mp.fsum(
            (1 if i % 2 else -1) * to_mpf(row[i]) / mp.mpf(i) ** k
            for i in range(1, n + 1)
        )
    return ctx.round(total)


def binomial_ratio_identity_check(n: int, j: int) -> bool:
    """f(n, j) == (n - j + 1) C(n, j-1) / ((n + 1) C(n + j, j - 1))."""
    if not 1 <= j <= n:
        raise DomainError(f"Identity needs 1 <= j <= n, got n={n}, j={j}.")
    binomial_form = Fraction((n - j + 1) * comb(n, j - 1), (n + 1) * comb(n + j, j - 1))
    return factorial_ratio(n, j) == binomial_form


def factorial_ratio_geometric(x, n: int, ctx: PrecisionContext) -> mp.mpf:
    """sum_{j=1}^n (-1)^(j-1) f(n, j) x^-j; tends to 1/(x + 1) for x > 1."""
    if n < 1:
        raise DomainError(f"n must be positive, got {n}.")
    row = factorial_ratio_row(n)
    with ctx.workdps():
        x = mp.mpf(x)
        if x == 0:
            raise DomainError("x must be non-zero.")
        total = mp.fsum(
            (1 if j % 2 else -1) * to_mpf(row[j]) * x ** -j
            for j in range(1, n + 1)
        )
    return ctx.round(total)
