"""
Difference Transforms Module
============================

Finite differences and the alternating binomial sums they rearrange into.

For f with ``lim Delta_h^n f(x) = 0``

    f(k) = lim_{n -> oo} sum_{j=1}^n (-1)^(j-1) C(n, j) f(k + j h)

which turns any oracle for zeta or eta at shifted arguments into a formula
for the value at k.  This module provides:

- ``DifferenceSpec`` / ``nth_difference``: forward and backward differences
  of any order, with an exact rational path for polynomial evaluators.
- ``binomial_accel`` and its zeta/eta specialisations, including the
  log-shifted and the product forms.
- ``stirling_difference_identity``: the finite-difference identity for
  powers of (x + j), checked as exact polynomials.
- ``mod1_sum``: alternating sums of huge terms carried in their fractional
  parts only.
- ``StepSequence`` / ``step_sequence_accel``: shifts by cumulative offsets
  instead of the plain multiples j h.
- Closed forms for Delta^n sin, nabla^n exp and Delta^n ln.

Every order-n sum runs ``ceil(0.31 n) + 10`` digits above the working
precision; C(n, n/2) cancels roughly 0.3 n digits.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Iterable

import mpmath as mp

from zeta_forge.exceptions import DomainError, InvalidParameterError
from zeta_forge.precision import (
    PrecisionContext,
    binomial_elevation,
    eta_working,
    to_mpf,
    zeta_working,
)

logger = logging.getLogger("zeta_forge.differences")

MAX_ORDER = 10000

RealFunction = Callable[[mp.mpf], mp.mpf]


def _real(value) -> mp.mpf:
    """mpf at the current precision from int, Fraction, 'p/q' text or a float-like."""
    if isinstance(value, str):
        value = Fraction(value.strip())
    if isinstance(value, Fraction):
        return to_mpf(value)
    return mp.mpf(value)


def at_current_precision(oracle: Callable[[mp.mpf, PrecisionContext], mp.mpf]) -> RealFunction:
    """Adapt a ``(s, ctx)`` oracle to a one-argument function that runs at
    whatever mpmath precision is active when it is called."""

    def evaluate(s: mp.mpf) -> mp.mpf:
        return oracle(s, PrecisionContext(mp.mp.dps, 0))

    return evaluate


zeta_function = at_current_precision(zeta_working)
eta_function = at_current_precision(eta_working)


# ---------------------------------------------------------------------------
# Difference operators
# ---------------------------------------------------------------------------


class Direction(str, Enum):
    FORWARD = "forward"
    BACKWARD = "backward"


@dataclass(frozen=True)
class DifferenceSpec:
    """Order and step of a forward or backward difference.

    ``step`` is kept exact (a ``Fraction``) so the rational path stays exact.
    """

    direction: Direction
    order: int
    step: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        object.__setattr__(self, "direction", Direction(self.direction))
        step = self.step
        if isinstance(step, str):
            step = Fraction(step.strip())
        elif not isinstance(step, Fraction):
            step = Fraction(step)
        object.__setattr__(self, "step", step)
        if not isinstance(self.order, int) or not 0 <= self.order <= MAX_ORDER:
            raise InvalidParameterError(
                f"Difference order must be an integer in [0, {MAX_ORDER}], got {self.order}."
            )
        if step <= 0:
            raise InvalidParameterError(f"Difference step must be positive, got {step}.")

    def nodes(self) -> list[tuple[int, int]]:
        """(signed weight, node index k) pairs; the node is x + k h or x - k h."""
        n = self.order
        outer = -1 if (n % 2 and self.direction is Direction.FORWARD) else 1
        return [(outer * (-1 if k % 2 else 1) * comb(n, k), k) for k in range(n + 1)]

    def node_offset(self, k: int) -> Fraction:
        return k * self.step if self.direction is Direction.FORWARD else -k * self.step


def nth_difference(f: RealFunction, x, spec: DifferenceSpec, ctx: PrecisionContext) -> mp.mpf:
    """Delta_h^n f(x) (forward) or nabla_h^n f(x) (backward).

    ``f`` is called at the elevated precision; evaluator errors propagate.
    """
    work = ctx.elevated(binomial_elevation(spec.order))
    with work.workdps():
        x = _real(x)
        h = to_mpf(spec.step)
        stride = h if spec.direction is Direction.FORWARD else -h
        total = mp.fsum(weight * f(x + k * stride) for weight, k in spec.nodes())
    return ctx.round(total)


def nth_difference_exact(
    f: Callable[[Fraction], Fraction], x, spec: DifferenceSpec
) -> Fraction:
    """Rational difference for evaluators that map rationals to rationals."""
    x = Fraction(x)
    return sum(
        (weight * Fraction(f(x + spec.node_offset(k))) for weight, k in spec.nodes()),
        Fraction(0),
    )


def delta_sin_closed_form(x, n: int, h, ctx: PrecisionContext) -> mp.mpf:
    """Delta_h^n sin(x) = (2 sin(h/2))^n sin(x + n (h + pi) / 2)."""
    with ctx.workdps():
        x, h = _real(x), _real(h)
        value = (2 * mp.sin(h / 2)) ** n * mp.sin(x + n * (h + mp.pi) / 2)
    return ctx.round(value)


def nabla_exp_closed_form(x, n: int, h, ctx: PrecisionContext) -> mp.mpf:
    """nabla_h^n exp(x) = exp(x) (1 - exp(-h))^n."""
    with ctx.workdps():
        x, h = _real(x), _real(h)
        value = mp.exp(x) * (1 - mp.exp(-h)) ** n
    return ctx.round(value)


def delta_ln(x, n: int, ctx: PrecisionContext, h=1) -> mp.mpf:
    """Delta_h^n ln(x) for n >= 1 from its Laplace representation

        (-1)^(n+1) int_0^oo exp(-x t) (1 - exp(-h t))^n / t dt

    which needs no cancelling binomial sum.

    Raises:
        DomainError: If x <= 0 or n < 1.
    """
    if n < 1:
        raise DomainError(f"delta_ln needs n >= 1, got {n}.")
    with ctx.workdps(10):
        x, h = _real(x), _real(h)
        if x <= 0 or h <= 0:
            raise DomainError("delta_ln needs x > 0 and h > 0.")
        integral = mp.quad(
            lambda t: mp.exp(-x * t) * (-mp.expm1(-h * t)) ** n / t,
            [0, 1, 4, mp.inf],
        )
        value = integral if n % 2 else -integral
    return ctx.round(value)


# ---------------------------------------------------------------------------
# Binomial accelerations
# ---------------------------------------------------------------------------


def _binomial_sum(values: Iterable[mp.mpf], n: int) -> mp.mpf:
    """sum_{j=1}^n (-1)^(j-1) C(n, j) v_j, binomials shared by one recurrence."""
    total = mp.mpf(0)
    weight = 1
    for j, value in enumerate(values, start=1):
        weight = weight * (n - j + 1) // j
        total += weight * value if j % 2 else -weight * value
    return total


def _check_order(n: int) -> None:
    if not isinstance(n, int) or not 1 <= n <= MAX_ORDER:
        raise InvalidParameterError(f"n must be an integer in [1, {MAX_ORDER}], got {n}.")


def binomial_accel(f: RealFunction, k, h, n: int, ctx: PrecisionContext) -> mp.mpf:
    """sum_{j=1}^n (-1)^(j-1) C(n, j) f(k + j h) = f(k) + (-1)^(n+1) Delta_h^n f(k).

    Converges to f(k) exactly when Delta_h^n f(k) -> 0; for an arbitrary f
    ``nth_difference`` gives the residual.
    """
    _check_order(n)
    work = ctx.elevated(binomial_elevation(n))
    with work.workdps():
        k, h = _real(k), _real(h)
        total = _binomial_sum((f(k + j * h) for j in range(1, n + 1)), n)
    return ctx.round(total)


def _check_positive_step(h) -> None:
    with mp.workdps(15):
        if _real(h) <= 0:
            raise DomainError(f"Step h must be positive, got {h}.")


def zeta_binomial_accel(k, h, n: int, ctx: PrecisionContext) -> mp.mpf:
    """sum_{j=1}^n (-1)^(j-1) C(n, j) zeta(k + j h), tending to zeta(k) for k > 1."""
    with mp.workdps(15):
        if _real(k) <= 1:
            raise DomainError(f"zeta_binomial_accel needs k > 1, got {k}.")
    _check_positive_step(h)
    return binomial_accel(zeta_function, k, h, n, ctx)


def eta_binomial_accel(k, h, n: int, ctx: PrecisionContext) -> mp.mpf:
    """sum_{j=1}^n (-1)^(j-1) C(n, j) eta(k + j h), tending to eta(k) for k > 0."""
    with mp.workdps(15):
        if _real(k) <= 0:
            raise DomainError(f"eta_binomial_accel needs k > 0, got {k}.")
    _check_positive_step(h)
    return binomial_accel(eta_function, k, h, n, ctx)


def zeta_log_shift_accel(k, h, n: int, ctx: PrecisionContext) -> mp.mpf:
    """sum_{j=1}^n (-1)^(j-1) C(n, j) zeta(ln(exp(k) + j h)).

    The shift acts on exp(k), so the nodes crowd together as j grows and the
    sum converges far faster than the plain shift.
    """
    with mp.workdps(15):
        if _real(k) <= 1:
            raise DomainError(f"zeta_log_shift_accel needs k > 1, got {k}.")
    _check_positive_step(h)
    _check_order(n)
    work = ctx.elevated(binomial_elevation(n))
    with work.workdps():
        base, step = mp.exp(_real(k)), _real(h)
        total = _binomial_sum(
            (zeta_function(mp.log(base + j * step)) for j in range(1, n + 1)), n
        )
    return ctx.round(total)


def zeta_product_accel(k, h, n: int, ctx: PrecisionContext) -> mp.mpf:
    """prod_{j odd} zeta(k + j h)^C(n,j) / prod_{j even} zeta(k + j h)^C(n,j).

    Evaluated as exp of the binomial sum of ln zeta; n = 1 gives zeta(k + h).
    """
    with mp.workdps(15):
        if _real(k) <= 1:
            raise DomainError(f"zeta_product_accel needs k > 1, got {k}.")
    _check_positive_step(h)
    _check_order(n)
    work = ctx.elevated(binomial_elevation(n))
    with work.workdps():
        k, h = _real(k), _real(h)
        log_value = _binomial_sum(
            (mp.log(zeta_function(k + j * h)) for j in range(1, n + 1)), n
        )
        value = mp.exp(log_value)
    return ctx.round(value)


def family_accel(k, x, y, s, n: int, ctx: PrecisionContext) -> mp.mpf:
    """sum_{j=1}^n (-1)^(j+1) C(n, j) ((x^j + ... + x + 1) / y^j)^s eta(k + j).

    Numeric experiment only; x = 0, y = 1 reduces to ``eta_binomial_accel``
    with h = 1.
    """
    _check_order(n)
    work = ctx.elevated(binomial_elevation(n))
    with work.workdps():
        k, x, y, s = _real(k), _real(x), _real(y), _real(s)
        if y == 0:
            raise DomainError("family_accel needs y != 0.")

        def weight(j: int) -> mp.mpf:
            geometric = j + 1 if x == 1 else (x ** (j + 1) - 1) / (x - 1)
            return (geometric / y ** j) ** s

        total = _binomial_sum(
            (weight(j) * eta_function(k + j) for j in range(1, n + 1)), n
        )
    return ctx.round(total)


def simple_pole_experiment(k, n: int, ctx: PrecisionContext) -> mp.mpf:
    """sum_{j=1}^{n-1} (-1)^(j-1) C(n-1, j) zeta(k - j (k-1)/n) - 1/(k-1).

    Nodes run from k down to 1 + (k-1)/n, approaching the pole at 1.
    """
    if not isinstance(n, int) or n < 2:
        raise InvalidParameterError(f"simple_pole_experiment needs n >= 2, got {n}.")
    work = ctx.elevated(binomial_elevation(n))
    with work.workdps():
        k = _real(k)
        if k <= 1:
            raise DomainError(f"simple_pole_experiment needs k > 1, got {k}.")
        step = (k - 1) / n
        total = _binomial_sum(
            (zeta_function(k - j * step) for j in range(1, n)), n - 1
        )
        value = total - 1 / (k - 1)
    return ctx.round(value)


# ---------------------------------------------------------------------------
# Powers, Stirling numbers and mod-1 sums
# ---------------------------------------------------------------------------


class PowerDirection(str, Enum):
    DESCENDING = "1-j"
    ASCENDING = "1+j"


def power_identity_check(x, n: int, direction: PowerDirection | str, ctx: PrecisionContext) -> mp.mpf:
    """sum_{j=1}^n (-1)^(j+1) C(n, j) x^(1 -+ j).

    Equals x (1 - (1 - 1/x)^n) descending and x (1 - (1 - x)^n) ascending,
    so it tends to x for x > 1 and for 0 < x < 1 respectively; at x = 2
    ascending it alternates between 0 (n even) and 4 (n odd).
    """
    direction = PowerDirection(direction)
    _check_order(n)
    sign = -1 if direction is PowerDirection.DESCENDING else 1
    work = ctx.elevated(binomial_elevation(n))
    with work.workdps():
        x = _real(x)
        if x == 0:
            raise DomainError("power_identity_check needs x != 0.")
        total = _binomial_sum((x ** (1 + sign * j) for j in range(1, n + 1)), n)
    return ctx.round(total)


@lru_cache(maxsize=None)
def stirling2(a: int, b: int) -> int:
    """Stirling number of the second kind; 0 when a < b."""
    if a < 0 or b < 0:
        raise DomainError(f"Stirling numbers need non-negative indices, got ({a}, {b}).")
    if a == b:
        return 1
    if b == 0 or a < b:
        return 0
    return b * stirling2(a - 1, b) + stirling2(a - 1, b - 1)


@dataclass(frozen=True)
class StirlingCheck:
    """Both sides of the identity as ascending integer coefficient tuples.

    ``correction`` is rhs minus x^k.
    """

    n: int
    k: int
    lhs: tuple[int, ...]
    rhs: tuple[int, ...]
    correction: tuple[int, ...]

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "lhs": list(self.lhs),
            "rhs": list(self.rhs),
            "correction": list(self.correction),
            "holds": self.holds,
        }


def stirling_difference_identity(n: int, k: int) -> StirlingCheck:
    """Check sum_{j=1}^n (-1)^(j+1) C(n, j) (x + j)^k as a polynomial in x.

    The right side is x^k plus (-1)^(n+1) n! sum_{i=0}^{k-n} C(k, i) S(k-i, n) x^i,
    an empty correction for k < n and the constant (-1)^(n+1) n! for k = n.
    """
    if n < 1 or k < 0:
        raise DomainError(f"Identity needs n >= 1 and k >= 0, got n={n}, k={k}.")
    lhs = [0] * (k + 1)
    for j in range(1, n + 1):
        weight = comb(n, j) if j % 2 else -comb(n, j)
        for i in range(k + 1):
            lhs[i] += weight * comb(k, i) * j ** (k - i)

    sign = 1 if n % 2 else -1
    correction = [0] * (k + 1)
    for i in range(max(0, k - n + 1)):
        correction[i] = sign * factorial(n) * comb(k, i) * stirling2(k - i, n)
    rhs = list(correction)
    rhs[k] += 1
    return StirlingCheck(n, k, tuple(lhs), tuple(rhs), tuple(correction))


def mod1_sum(term_generator: Callable[[int], mp.mpf], n: int, ctx: PrecisionContext) -> mp.mpf:
    """Add terms 1..n modulo 1; the result is the representative in [0, 1).

    Signs are part of the generated terms.  Only fractional parts are ever
    accumulated, so the running value never exceeds 1 whatever the size of
    the individual terms.
    """
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}.")
    with ctx.workdps():
        acc = mp.mpf(0)
        for j in range(1, n + 1):
            acc = mp.frac(acc + mp.frac(term_generator(j)))
    return ctx.round(acc)


def bigenergy_terms(n: int) -> Callable[[int], mp.mpf]:
    """Signed terms (-1)^(j+1) 800 n! eta(3+j) / ((j+5) (j+5)! (n-j)!), j = 1..n-5."""
    if n < 6:
        raise DomainError(f"The large-term sum needs n >= 6, got {n}.")
    falling = (n + 1) * (n + 2) * (n + 3) * (n + 4) * (n + 5)

    def term(j: int) -> mp.mpf:
        weight = Fraction(800 * comb(n + 5, j + 5), (j + 5) * falling)
        value = to_mpf(weight) * eta_working(3 + j, PrecisionContext(mp.mp.dps, 0))
        return value if j % 2 else -value

    return term


def bigenergy_mod1(n: int, ctx: PrecisionContext) -> mp.mpf:
    """1 + (the large-term sum mod 1), tending to zeta(3)."""
    work = ctx.elevated(binomial_elevation(n))
    fraction = mod1_sum(bigenergy_terms(n), n - 5, work)
    with work.workdps():
        value = 1 + fraction
    return ctx.round(value)


# ---------------------------------------------------------------------------
# Step sequences
# ---------------------------------------------------------------------------


class StepKind(str, Enum):
    INVERSE_POWER = "inverse_power"
    EXP_DECAY = "exp_decay"
    LOGISTIC = "logistic"
    GEOMETRIC_HALF = "geometric_half"


@dataclass(frozen=True)
class StepSequence:
    """Offsets o_1 < o_2 < ... replacing the multiples j of a plain shift.

    - inverse_power(m): o_j = sum_{k<=j} k^-m, m > 1
    - exp_decay: o_j = sum_{k<=j} exp(-k)
    - geometric_half: o_j = sum_{k<=j} 2^-k
    - logistic: o_j = 1 / (1 + exp(-j)), not cumulative
    """

    kind: StepKind
    m: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", StepKind(self.kind))
        if self.kind is StepKind.INVERSE_POWER:
            if self.m is None or self.m <= 1:
                raise InvalidParameterError(f"inverse_power needs m > 1, got {self.m}.")
        elif self.m is not None:
            raise InvalidParameterError(f"{self.kind.value} takes no exponent.")

    @classmethod
    def inverse_power(cls, m: int) -> "StepSequence":
        return cls(StepKind.INVERSE_POWER, m)

    @classmethod
    def parse(cls, text: str) -> "StepSequence":
        """Parse ``inverse_power:2``, ``exp_decay``, ``logistic`` or ``geometric_half``."""
        name, _, exponent = text.strip().partition(":")
        try:
            kind = StepKind(name)
        except ValueError:
            supported = ", ".join(kind.value for kind in StepKind)
            raise InvalidParameterError(f"Unknown step sequence '{name}'. Supported: {supported}")
        if exponent:
            try:
                return cls(kind, int(exponent))
            except ValueError:
                raise InvalidParameterError(f"Exponent must be an integer, got '{exponent}'.")
        return cls(kind)

    def offsets(self, n: int) -> list[mp.mpf]:
        """o_1..o_n at the current precision."""
        if self.kind is StepKind.LOGISTIC:
            return [1 / (1 + mp.exp(-j)) for j in range(1, n + 1)]
        if self.kind is StepKind.INVERSE_POWER:
            step = lambda k: mp.mpf(k) ** -self.m  # noqa: E731
        elif self.kind is StepKind.EXP_DECAY:
            step = lambda k: mp.exp(-k)  # noqa: E731
        else:
            step = lambda k: mp.ldexp(1, -k)  # noqa: E731
        out, acc = [], mp.mpf(0)
        for k in range(1, n + 1):
            acc += step(k)
            out.append(+acc)
        return out

    def __str__(self) -> str:
        return f"{self.kind.value}:{self.m}" if self.m is not None else self.kind.value


def step_sequence_accel(
    f: RealFunction, x, h, seq: StepSequence, n: int, ctx: PrecisionContext
) -> mp.mpf:
    """sum_{j=1}^n (-1)^(j+1) C(n, j) f(x + h o_j)."""
    _check_order(n)
    work = ctx.elevated(binomial_elevation(n))
    with work.workdps():
        x, h = _real(x), _real(h)
        total = _binomial_sum((f(x + h * o) for o in seq.offsets(n)), n)
    return ctx.round(total)
