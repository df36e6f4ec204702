"""
Continued Roots Module
======================

Infinite nested radicals ``sqrt(2 +- sqrt(2 +- ...))`` read as a numeral
system, the elementary functions obtained by replacing the innermost
``sqrt 2`` with ``sqrt(2 +- 2x)``, and the families built on them:

- ``S_of_x``: (1/8) sum over ((2i-1) pi -+ 2 arcsin x)^-3, with
  ``(8 pi^3 / 7) S(sqrt(2)/2) = zeta(3)``.
- ``A_family`` / ``A_tilde_family``: the same construction for any
  exponent n, normalised so the value at sqrt(2)/2 is zeta(n).
- ``sigma_function`` / ``sigma_expansion``: the two-branch sum and its
  power series in arcsin x.

Partial sums come back as ``SeriesEstimate`` with an integral-comparison
bound on the omitted tail.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum

import mpmath as mp
from mpmath.libmp import NoConvergence

from zeta_forge.dynamic_sums import SignSequence
from zeta_forge.exceptions import AccuracyError, DomainError, InconsistencyError
from zeta_forge.precision import ConstantId, PrecisionContext, alpha_ref, constant_working

logger = logging.getLogger("zeta_forge.continued_roots")

MAX_PERIOD = 6
ITERATION_PERIODS = 60
ITERATION_TOLERANCE = mp.mpf("1e-6")


# ---------------------------------------------------------------------------
# Continued roots
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootPattern:
    """Sign word ``prefix`` followed by ``repeat`` repeated forever."""

    prefix: SignSequence
    repeat: SignSequence

    @classmethod
    def parse(cls, text: str) -> "RootPattern":
        """Parse ``"prefix|repeat"``; without '|' the whole text is the prefix."""
        prefix_text, _, repeat_text = text.partition("|")
        return cls(SignSequence.parse(prefix_text), SignSequence.parse(repeat_text))

    @property
    def period(self) -> tuple[int, ...]:
        # an empty repeat extends the prefix with '+'
        return self.repeat.signs or (1,)

    def __str__(self) -> str:
        return f"{self.prefix.compact}|{self.repeat.compact}"


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def period_polynomial(period: tuple[int, ...]) -> list[int]:
    """Integer coefficients (ascending) of q(y) = z_m(y) - y, where
    z_0 = y and z_{k+1} = r_{k+1} (z_k^2 - 2).
    """
    z = [0, 1]
    for sign in period:
        squared = _poly_mul(z, z)
        squared[0] -= 2
        z = [sign * c for c in squared]
    z[1] -= 1
    return z


def _iterate_period(period: tuple[int, ...]) -> mp.mpf:
    y = mp.mpf(1)
    for _ in range(ITERATION_PERIODS):
        for sign in reversed(period):
            y = mp.sqrt(2 + sign * y)
    return y


def _periodic_value(period: tuple[int, ...], ctx: PrecisionContext) -> mp.mpf:
    if len(period) > MAX_PERIOD:
        raise DomainError(f"Repeat blocks longer than {MAX_PERIOD} signs are not supported.")
    coefficients = list(reversed(period_polynomial(period)))
    degree = len(coefficients) - 1
    with ctx.workdps():
        iterated = _iterate_period(period)
        try:
            roots = mp.polyroots(coefficients, maxsteps=50 + 20 * degree, extraprec=20 + 4 * degree)
        except NoConvergence as exc:
            raise AccuracyError(
                f"Root finding did not converge for period {period}.", best_value=iterated
            ) from exc
        slack = mp.mpf(10) ** (-(ctx.digits // 2))
        candidates = [
            mp.re(root) for root in roots
            if abs(mp.im(root)) < slack and -slack <= mp.re(root) <= 2 + slack
        ]
        if not candidates:
            raise InconsistencyError(f"No root of the period polynomial lies in [0, 2] for {period}.")
        best = min(candidates, key=lambda root: abs(root - iterated))
        if abs(best - iterated) > ITERATION_TOLERANCE:
            raise InconsistencyError(
                f"Iterated value {mp.nstr(iterated, 12)} matches no root in [0, 2]."
            )
        logger.debug("Period %s: %d real candidates, picked %s", period, len(candidates), best)
        return min(max(best, mp.mpf(0)), mp.mpf(2))


def continued_root_value(pattern: RootPattern, ctx: PrecisionContext) -> mp.mpf:
    """Value of the continued root.

    Raises:
        InconsistencyError: If no root in [0, 2] agrees with direct iteration.
        DomainError: If the repeat block is longer than ``MAX_PERIOD``.
    """
    value = _periodic_value(pattern.period, ctx)
    with ctx.workdps():
        for sign in reversed(pattern.prefix.signs):
            value = mp.sqrt(max(2 + sign * value, 0))
    return ctx.round(value)


# ---------------------------------------------------------------------------
# Elementary functions
# ---------------------------------------------------------------------------


def _check_unit(x, closed: bool = True) -> mp.mpf:
    x = mp.mpf(x)
    if abs(x) > 1 or (not closed and abs(x) == 1):
        bound = "[-1, 1]" if closed else "(-1, 1)"
        raise DomainError(f"x must lie in {bound}, got {mp.nstr(x, 10)}.")
    return x


def elementary_function(seq: SignSequence, x, ctx: PrecisionContext) -> mp.mpf:
    """Nested radical over ``seq`` with innermost term ``sqrt(2 + s_k 2x)``.

    Raises:
        DomainError: If |x| > 1 or the sequence is empty.
    """
    if not seq.signs:
        raise DomainError("An elementary function needs at least one sign.")
    with ctx.workdps():
        x = _check_unit(x)
        value = mp.sqrt(max(2 + seq.signs[-1] * 2 * x, 0))
        for sign in reversed(seq.signs[:-1]):
            value = mp.sqrt(2 + sign * value)
        return value


def elementary_function_angle(seq: SignSequence, x, ctx: PrecisionContext) -> mp.mpf:
    """theta with ``elementary_function(seq, x) == 2 sin(theta)``."""
    if not seq.signs:
        raise DomainError("An elementary function needs at least one sign.")
    with ctx.workdps():
        x = _check_unit(x)
        quarter = constant_working(ConstantId.PI, ctx) / 4
        theta = quarter + seq.signs[-1] * mp.asin(x) / 2
        for sign in reversed(seq.signs[:-1]):
            theta = quarter + sign * theta / 2
        return theta


class Branch(str, Enum):
    MINUS = "minus"
    PLUS = "plus"


def limit_function(i: int, branch: Branch | str, x, ctx: PrecisionContext) -> mp.mpf:
    """1 / (8 ((2i-1) pi -+ 2 arcsin x)^3).

    Raises:
        DomainError: If |x| > 1, i < 1, or the denominator vanishes.
    """
    if i < 1:
        raise DomainError(f"Index must be positive, got {i}.")
    sign = -1 if Branch(branch) is Branch.MINUS else 1
    with ctx.workdps():
        x = _check_unit(x)
        pi = constant_working(ConstantId.PI, ctx)
        base = (2 * i - 1) * pi + sign * 2 * mp.asin(x)
        if base == 0:
            raise DomainError(f"limit_function is singular at i={i}, x={mp.nstr(x, 10)}.")
        value = 1 / (8 * base ** 3)
    return ctx.round(value)


# ---------------------------------------------------------------------------
# S(x), A_n(x) and related families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FamilyParams:
    """Exponent, argument and number of terms for a family sum."""

    n: int
    x: mp.mpf
    terms: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise DomainError(f"Exponent must be at least 2, got {self.n}.")
        if self.terms < 1:
            raise DomainError(f"Number of terms must be positive, got {self.terms}.")
        _check_unit(self.x, closed=False)


@dataclass(frozen=True)
class SeriesEstimate:
    """Partial sum with an upper bound on the omitted (positive) tail."""

    value: mp.mpf
    tail_bound: mp.mpf
    terms: int


def _two_branch_sum(params: FamilyParams, ctx: PrecisionContext) -> tuple[mp.mpf, mp.mpf]:
    """sum_{i<=T} [((2i-1)pi - c)^-n + ((2i-1)pi + c)^-n] and its tail bound, c = 2 arcsin x."""
    n, terms = params.n, params.terms
    pi = constant_working(ConstantId.PI, ctx)
    c = 2 * mp.asin(params.x)
    total = mp.fsum(
        ((2 * i - 1) * pi - c) ** -n + ((2 * i - 1) * pi + c) ** -n
        for i in range(1, terms + 1)
    )
    # sum_{i>T} f(i) <= integral_T^inf f for decreasing f
    edge = (2 * terms - 1) * pi
    tail = (
        (edge - c) ** (1 - n) + (edge + c) ** (1 - n)
    ) / (2 * pi * (n - 1))
    return total, tail


def S_of_x(x, terms: int, ctx: PrecisionContext) -> SeriesEstimate:
    """(1/8) sum_{i=1}^{terms} [(pi(2i-1) - 2 arcsin x)^-3 + (pi(2i-1) + 2 arcsin x)^-3]."""
    with ctx.workdps():
        params = FamilyParams(3, mp.mpf(x), terms)
        total, tail = _two_branch_sum(params, ctx)
        value, bound = total / 8, tail / 8
    return SeriesEstimate(ctx.round(value), bound, terms)


def _s_working(x, terms: int, ctx: PrecisionContext) -> mp.mpf:
    total, _ = _two_branch_sum(FamilyParams(3, x, terms), ctx)
    return total / 8


class FunctionalIdentity(str, Enum):
    HALVING = "halving"
    DOUBLING = "doubling"


def functional_equation_residual(
    x,
    terms: int,
    ctx: PrecisionContext,
    identity: FunctionalIdentity | str = FunctionalIdentity.HALVING,
) -> mp.mpf:
    """Residual of a functional equation of S.

    ``halving``: S(x) = (1/8)(S(sqrt(2+2x)/2) + S(sqrt(2-2x)/2)).  The left
    side uses 2*terms so both sides cover exactly the same terms.

    ``doubling``: S(x) = 8 S(1 - 2x^2) - S(sqrt(1 - x^2)), x != 0.  Truncations
    do not line up; the residual is bounded by the three tail bounds.

    Raises:
        DomainError: If |x| >= 1, or x == 0 for the doubling identity.
    """
    identity = FunctionalIdentity(identity)
    with ctx.workdps():
        x = _check_unit(x, closed=False)
        if identity is FunctionalIdentity.HALVING:
            left = _s_working(x, 2 * terms, ctx)
            right = (
                _s_working(mp.sqrt(2 + 2 * x) / 2, terms, ctx)
                + _s_working(mp.sqrt(2 - 2 * x) / 2, terms, ctx)
            ) / 8
        else:
            if x == 0:
                raise DomainError("The doubling identity is singular at x = 0.")
            left = _s_working(x, terms, ctx)
            right = 8 * _s_working(1 - 2 * x * x, terms, ctx) - _s_working(mp.sqrt(1 - x * x), terms, ctx)
        residual = abs(left - right)
    return ctx.round(residual)


def A_family(n: int, x, terms: int, ctx: PrecisionContext) -> SeriesEstimate:
    """pi^n / (2^n - 1) times the two-branch sum; equals zeta(n) at x = sqrt(2)/2."""
    with ctx.workdps():
        params = FamilyParams(n, mp.mpf(x), terms)
        total, tail = _two_branch_sum(params, ctx)
        prefactor = constant_working(ConstantId.PI, ctx) ** n / (mp.mpf(2) ** n - 1)
        value, bound = prefactor * total, prefactor * tail
    return SeriesEstimate(ctx.round(value), bound, terms)


def A_tilde_family(n: int, x, terms: int, ctx: PrecisionContext) -> SeriesEstimate:
    """pi^n / (2^n - 1) times sum_{i<=terms} (i pi - 2 arcsin x)^-n."""
    with ctx.workdps():
        params = FamilyParams(n, mp.mpf(x), terms)
        pi = constant_working(ConstantId.PI, ctx)
        c = 2 * mp.asin(params.x)
        if c >= pi:
            raise DomainError("A_tilde_family needs 2 arcsin x < pi.")
        total = mp.fsum((i * pi - c) ** -n for i in range(1, terms + 1))
        tail = (terms * pi - c) ** (1 - n) / (pi * (n - 1))
        prefactor = pi ** n / (mp.mpf(2) ** n - 1)
        value, bound = prefactor * total, prefactor * tail
    return SeriesEstimate(ctx.round(value), bound, terms)


# ---------------------------------------------------------------------------
# Sigma expansion
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SigmaCoefficient:
    """k * alpha(pi_power) * arcsin(x)^arcsin_power / pi^pi_power."""

    k: int
    pi_power: int
    arcsin_power: int


def _sigma_k(n: int, i: int) -> int:
    return 2 ** (2 * i + 1) * math.comb(n - 1 + 2 * i, n - 1)


def sigma_coeff(n_odd: int, i: int) -> SigmaCoefficient:
    """Coefficient of arcsin(x)^(2i) in the expansion of Sigma_n.

    Raises:
        DomainError: If n_odd is not an odd integer >= 3 or i < 0.
    """
    if n_odd < 3 or n_odd % 2 == 0:
        raise DomainError(f"sigma_coeff needs an odd exponent >= 3, got {n_odd}.")
    if i < 0:
        raise DomainError(f"Coefficient index must be non-negative, got {i}.")
    return SigmaCoefficient(k=_sigma_k(n_odd, i), pi_power=n_odd + 2 * i, arcsin_power=2 * i)


def sigma_function(n: int, x, terms: int, ctx: PrecisionContext) -> SeriesEstimate:
    """Sigma_n(x) = sum_i [((2i-1)pi - 2 arcsin x)^-n + ((2i-1)pi + 2 arcsin x)^-n]."""
    with ctx.workdps():
        total, tail = _two_branch_sum(FamilyParams(n, mp.mpf(x), terms), ctx)
    return SeriesEstimate(ctx.round(total), tail, terms)


def sigma_expansion(n: int, x, order: int, ctx: PrecisionContext) -> mp.mpf:
    """Sigma_n(x) from its arcsin power series truncated after ``order`` terms."""
    if n < 2:
        raise DomainError(f"Exponent must be at least 2, got {n}.")
    with ctx.workdps():
        a = mp.asin(_check_unit(x, closed=False))
        pi = constant_working(ConstantId.PI, ctx)
        total = mp.fsum(
            _sigma_k(n, i) * alpha_ref(n + 2 * i, ctx) * a ** (2 * i) / pi ** (n + 2 * i)
            for i in range(order + 1)
        )
    return ctx.round(total)
