"""
Precision Core Module
=====================

The arbitrary-precision contract shared by every other module.

- ``PrecisionContext``: immutable (digits, guard) pair; all work happens at
  ``digits + guard`` and public results are rounded back to ``digits``.
- ``constant`` / ``constant_pair``: pi, ln 2, Catalan's G, Euler's gamma and
  Glaisher's A, each with two independent evaluations for cross-checks.
- ``zeta_ref`` / ``eta_ref``: the reference oracle.  The alternating series
  for eta is accelerated with the fixed rational d_k weights; Euler-Maclaurin
  summation is kept as a second, unrelated method.
- ``bernoulli`` / ``euler_number``: exact special numbers.

Real values are ``mpmath.mpf`` and exact rationals are ``fractions.Fraction``.
"""

from __future__ import annotations

import logging
import math
from contextlib import AbstractContextManager
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from functools import lru_cache

import mpmath as mp

from zeta_forge.exceptions import ConfigurationError, DomainError, InconsistencyError, InvalidParameterError

logger = logging.getLogger("zeta_forge.precision")

MIN_DIGITS = 15
DEFAULT_GUARD = 10

# Stored cross-check literals, checked against mpmath's own algorithms
# (Brent-McMillan for gamma, zeta'(-1) for A). Decimal expansions as listed
# in OEIS A001620 (gamma) and A074962 (Glaisher-Kinkelin A).
EULER_GAMMA_LITERAL = (
    "0.57721566490153286060651209008240243104215933593992"
    "35988057672348848677267776646709369470632917467495"
    "14631447249807082480960504014486542836224173997644"
    "92353625350033374293733773767394279259525824709491"
    "60087352039481656708532331517766115286211995015079"
    "84793745085705740029921354786146694029604325421519"
)
GLAISHER_A_LITERAL = (
    "1.28242712910062263687534256886979172776768892732500"
    "11920637400217404063088588264611297364919582023743"
    "94206461203990007489331577913627752804041590725738"
    "61727522143343271434397873350679152573668569078765"
)


# ---------------------------------------------------------------------------
# Precision context
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision in decimal digits plus guard digits."""

    digits: int
    guard: int = DEFAULT_GUARD

    @property
    def working_digits(self) -> int:
        return self.digits + self.guard

    def workdps(self, extra: int = 0) -> AbstractContextManager:
        """Context manager running mpmath at ``working_digits + extra``."""
        return mp.workdps(self.working_digits + extra)

    def elevated(self, extra: int) -> "PrecisionContext":
        """Same public digits, ``extra`` more guard digits."""
        return replace(self, guard=self.guard + max(0, extra))

    def tolerance(self, slack: int = 0) -> mp.mpf:
        """``10^-(digits - slack)``."""
        with self.workdps():
            return mp.mpf(10) ** (-(self.digits - slack))

    def round(self, value) -> mp.mpf:
        """Round *value* to the public precision (round-to-nearest)."""
        with mp.workdps(self.digits):
            return +mp.mpf(value)


def make_context(digits: int, guard: int = DEFAULT_GUARD) -> PrecisionContext:
    """Build a validated ``PrecisionContext``.

    Raises:
        ConfigurationError: If ``digits`` is below 15 or ``guard`` is negative.
    """
    if not isinstance(digits, int) or digits < MIN_DIGITS:
        raise ConfigurationError(
            f"Precision must be at least {MIN_DIGITS} digits, got {digits}."
        )
    if guard < 0:
        raise ConfigurationError(f"Guard digits must be non-negative, got {guard}.")
    return PrecisionContext(digits=digits, guard=guard)


def binomial_elevation(n: int) -> int:
    """Extra digits needed for an order-n alternating binomial sum."""
    return math.ceil(0.31 * n) + 10


# ---------------------------------------------------------------------------
# Decimal strings
# ---------------------------------------------------------------------------


def to_decimal_string(value, ctx: PrecisionContext) -> str:
    """Full-precision, locale-independent decimal representation."""
    with mp.workdps(ctx.digits):
        return mp.nstr(+mp.mpf(value), ctx.digits)


def parse_decimal(text: str, ctx: PrecisionContext) -> mp.mpf:
    """Parse plain or scientific notation with a '.' radix point.

    Raises:
        InvalidParameterError: If *text* is not a decimal number.
    """
    cleaned = text.strip()
    if not cleaned or "," in cleaned:
        raise InvalidParameterError(f"Not a decimal number: '{text}'.")
    try:
        with ctx.workdps():
            return mp.mpf(cleaned)
    except (ValueError, TypeError):
        raise InvalidParameterError(f"Not a decimal number: '{text}'.")


# ---------------------------------------------------------------------------
# Constants
# ---------------------------------------------------------------------------


class ConstantId(str, Enum):
    PI = "pi"
    LN2 = "ln2"
    EULER_GAMMA = "euler_gamma"
    CATALAN_G = "catalan_G"
    GLAISHER_A = "glaisher_A"


def _pi_agm() -> mp.mpf:
    a, b = mp.mpf(1), 1 / mp.sqrt(2)
    t, p = mp.mpf(1) / 4, mp.mpf(1)
    eps = mp.eps * 4
    while abs(a - b) > eps:
        a_next = (a + b) / 2
        b = mp.sqrt(a * b)
        t -= p * (a - a_next) ** 2
        p *= 2
        a = a_next
    return (a + b) ** 2 / (4 * t)


def _arctan_inverse(x: int) -> mp.mpf:
    """arctan(1/x) by its Taylor series."""
    total, power, k = mp.mpf(0), mp.mpf(1) / x, 0
    x2 = x * x
    while power > mp.eps:
        term = power / (2 * k + 1)
        total += -term if k % 2 else term
        power /= x2
        k += 1
    return total


def _atanh_inverse(x: int) -> mp.mpf:
    """atanh(1/x) by its Taylor series."""
    total, power, k = mp.mpf(0), mp.mpf(1) / x, 0
    x2 = x * x
    while power > mp.eps:
        total += power / (2 * k + 1)
        power /= x2
        k += 1
    return total


def _pi_machin() -> mp.mpf:
    return 16 * _arctan_inverse(5) - 4 * _arctan_inverse(239)


def _ln2_single() -> mp.mpf:
    return 2 * _atanh_inverse(3)


def _ln2_triple() -> mp.mpf:
    return 18 * _atanh_inverse(26) - 2 * _atanh_inverse(4801) + 8 * _atanh_inverse(8749)


def _catalan_ramanujan() -> mp.mpf:
    # G = (pi/8) ln(2+sqrt3) + (3/8) sum 1/((2n+1)^2 C(2n,n))
    total, central, n = mp.mpf(0), mp.mpf(1), 0
    while True:
        term = 1 / ((2 * n + 1) ** 2 * central)
        if term < mp.eps:
            break
        total += term
        central = central * 2 * (2 * n + 1) / (n + 1)
        n += 1
    return _pi_agm() / 8 * mp.log(2 + mp.sqrt(3)) + 3 * total / 8


def _literal(text: str) -> mp.mpf:
    return mp.mpf(text)


_PRIMARY = {
    ConstantId.PI: _pi_agm,
    ConstantId.LN2: _ln2_single,
    ConstantId.CATALAN_G: _catalan_ramanujan,
    ConstantId.EULER_GAMMA: lambda: +mp.euler,
    ConstantId.GLAISHER_A: lambda: +mp.glaisher,
}

_SECONDARY = {
    ConstantId.PI: _pi_machin,
    ConstantId.LN2: _ln2_triple,
    ConstantId.CATALAN_G: lambda: +mp.catalan,
    ConstantId.EULER_GAMMA: lambda: _literal(EULER_GAMMA_LITERAL),
    ConstantId.GLAISHER_A: lambda: _literal(GLAISHER_A_LITERAL),
}

LITERAL_DIGITS = {
    ConstantId.EULER_GAMMA: len(EULER_GAMMA_LITERAL) - 2,
    ConstantId.GLAISHER_A: len(GLAISHER_A_LITERAL) - 2,
}


@lru_cache(maxsize=256)
def _constant_cached(cid: ConstantId, working_digits: int) -> mp.mpf:
    with mp.workdps(working_digits):
        return _PRIMARY[cid]()


def constant(cid: ConstantId | str, ctx: PrecisionContext) -> mp.mpf:
    """Return the named constant correct to ``ctx.digits``."""
    return ctx.round(_constant_cached(ConstantId(cid), ctx.working_digits))


def constant_working(cid: ConstantId | str, ctx: PrecisionContext) -> mp.mpf:
    """The constant at working precision, for use inside larger computations."""
    return _constant_cached(ConstantId(cid), ctx.working_digits)


def constant_pair(cid: ConstantId | str, ctx: PrecisionContext) -> tuple[mp.mpf, mp.mpf]:
    """Two independently computed values of the constant, rounded to ``ctx.digits``.

    Raises:
        ConfigurationError: If the second value is a stored literal shorter than ``ctx.digits``.
    """
    cid = ConstantId(cid)
    if ctx.digits > LITERAL_DIGITS.get(cid, ctx.digits):
        raise ConfigurationError(
            f"The stored {cid.value} literal carries {LITERAL_DIGITS[cid]} digits, "
            f"{ctx.digits} were requested."
        )
    with ctx.workdps():
        first = _PRIMARY[cid]()
        second = _SECONDARY[cid]()
    return ctx.round(first), ctx.round(second)


def check_stored_literals(digits: int = 50) -> None:
    """Compare every stored literal with its computed counterpart.

    Raises:
        InconsistencyError: If a literal disagrees within ``digits`` digits.
    """
    ctx = make_context(digits)
    for cid in LITERAL_DIGITS:
        first, second = constant_pair(cid, ctx)
        if abs(first - second) > ctx.tolerance(1):
            raise InconsistencyError(
                f"Stored {cid.value} literal disagrees with the computed value "
                f"within {digits} digits."
            )


# ---------------------------------------------------------------------------
# Exact special numbers
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _bernoulli_even_table(count: int) -> tuple[Fraction, ...]:
    """B_0, B_2, ..., B_{2(count-1)} from sum_{r<=m} C(m+1, r) B_r = 0 with B_1 = -1/2."""
    table = [Fraction(1)]
    for half in range(1, count):
        m = 2 * half
        acc = Fraction(m + 1) * Fraction(-1, 2)
        for j, value in enumerate(table):
            acc += math.comb(m + 1, 2 * j) * value
        table.append(-acc / (m + 1))
    return tuple(table)


def bernoulli(m: int) -> Fraction:
    """Exact Bernoulli number B_m (B_1 = -1/2).

    Raises:
        DomainError: For negative m or odd m > 1.
    """
    if m < 0:
        raise DomainError(f"Bernoulli index must be non-negative, got {m}.")
    if m == 1:
        return Fraction(-1, 2)
    if m % 2:
        raise DomainError(f"Odd Bernoulli index {m} is not supported (B_m = 0).")
    return _bernoulli_even_table(m // 2 + 1)[m // 2]


@lru_cache(maxsize=None)
def _euler_table(count: int) -> tuple[int, ...]:
    table = [1]
    for half in range(1, count):
        m = 2 * half
        table.append(-sum(math.comb(m, 2 * k) * table[k] for k in range(half)))
    return tuple(table)


def euler_number(m: int) -> int:
    """Exact secant-series Euler number E_m (zero for odd m).

    Raises:
        DomainError: For negative m.
    """
    if m < 0:
        raise DomainError(f"Euler index must be non-negative, got {m}.")
    if m % 2:
        return 0
    return _euler_table(m // 2 + 1)[m // 2]


# ---------------------------------------------------------------------------
# Reference oracle for zeta and eta
# ---------------------------------------------------------------------------


@lru_cache(maxsize=64)
def _borwein_weights(n: int) -> tuple[int, ...]:
    """Exact d_0..d_n with d_k = n * sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)."""
    weights, acc = [], Fraction(0)
    for i in range(n + 1):
        acc += Fraction(math.factorial(n + i - 1) * 4 ** i,
                        math.factorial(n - i) * math.factorial(2 * i))
        weights.append(n * acc)
    # every partial sum times n is an integer
    return tuple(int(w) for w in weights)


def _eta_borwein(s: mp.mpf) -> mp.mpf:
    n = int(1.31 * mp.mp.dps) + 10
    d = _borwein_weights(n)
    dn = d[n]
    total = mp.mpf(0)
    for k in range(n):
        term = (d[k] - dn) / mp.power(k + 1, s)
        total += -term if k % 2 else term
    return -total / dn


@lru_cache(maxsize=8192)
def _eta_cached(s: mp.mpf, working_digits: int) -> mp.mpf:
    with mp.workdps(working_digits):
        return _eta_borwein(s)


def _extra_digits_near_one(s: mp.mpf) -> int:
    gap = abs(1 - mp.power(2, 1 - s))
    return max(0, int(-mp.log10(gap)) + 1) if gap < 1 else 0


def eta_ref(s, ctx: PrecisionContext) -> mp.mpf:
    """Dirichlet eta(s) for real s > 0, correct to ``ctx.digits``.

    Raises:
        DomainError: If s <= 0.
    """
    return ctx.round(eta_working(s, ctx))


def eta_working(s, ctx: PrecisionContext) -> mp.mpf:
    """eta(s) at working precision."""
    with ctx.workdps():
        s = mp.mpf(s)
        if s <= 0:
            raise DomainError(f"eta_ref requires s > 0, got {s}.")
        return _eta_cached(s, ctx.working_digits)


def zeta_working(s, ctx: PrecisionContext) -> mp.mpf:
    """zeta(s) at working precision."""
    with ctx.workdps():
        s = mp.mpf(s)
        if s <= 1:
            raise DomainError(f"zeta_ref requires s > 1, got {s}.")
        extra = _extra_digits_near_one(s)
    with ctx.workdps(extra):
        eta = _eta_cached(s, ctx.working_digits + extra)
        value = eta / (1 - mp.power(2, 1 - s))
    with ctx.workdps():
        return +value


def zeta_ref(s, ctx: PrecisionContext) -> mp.mpf:
    """Riemann zeta(s) for real s > 1, correct to ``ctx.digits``.

    Raises:
        DomainError: If s <= 1.
    """
    return ctx.round(zeta_working(s, ctx))


def zeta_ref_euler_maclaurin(s, ctx: PrecisionContext) -> mp.mpf:
    """Second oracle: Euler-Maclaurin summation, for cross-checks only.

    Raises:
        DomainError: If s <= 1.
    """
    with ctx.workdps():
        s = mp.mpf(s)
        if s <= 1:
            raise DomainError(f"zeta_ref requires s > 1, got {s}.")
        wd = ctx.working_digits
        big_n = wd + 10
        total = mp.fsum(mp.power(m, -s) for m in range(1, big_n))
        total += mp.power(big_n, 1 - s) / (s - 1) + mp.power(big_n, -s) / 2
        rising = s
        power = mp.power(big_n, -s - 1)
        for k in range(1, wd + 1):
            b = bernoulli(2 * k)
            term = mp.mpf(b.numerator) / b.denominator / mp.factorial(2 * k) * rising * power
            total += term
            if abs(term) < mp.eps * abs(total):
                break
            rising *= (s + 2 * k - 1) * (s + 2 * k)
            power /= big_n * big_n
        return ctx.round(total)


def zeta_even_closed_form(k: int, ctx: PrecisionContext) -> mp.mpf:
    """zeta(2k) = |B_2k| (2 pi)^2k / (2 (2k)!) from the exact Bernoulli number."""
    if k < 1:
        raise DomainError(f"Closed form needs k >= 1, got {k}.")
    b = abs(bernoulli(2 * k))
    with ctx.workdps():
        two_pi = 2 * constant_working(ConstantId.PI, ctx)
        value = mp.mpf(b.numerator) / b.denominator * two_pi ** (2 * k) / (2 * mp.factorial(2 * k))
    return ctx.round(value)


def alpha_ref(n, ctx: PrecisionContext) -> mp.mpf:
    """alpha(n) = (2^n - 1) zeta(n) / 2^n, the sum over odd reciprocals."""
    with ctx.workdps():
        value = (1 - mp.power(2, -mp.mpf(n))) * zeta_working(n, ctx)
    return ctx.round(value)


def to_mpf(value: Fraction | int) -> mp.mpf:
    """Exact rational to mpf at the current precision."""
    value = Fraction(value)
    return mp.mpf(value.numerator) / value.denominator
