"""
Reversion Module
================

Truncated power series and their reversion, used to invert the integral

    f(x) = (1/7) int_0^x t (pi - t) csc t dt,    f(pi) = zeta(3),

and so express pi as a power series in zeta(3).

- ``PowerSeries``: immutable truncated series about a center, with the
  arithmetic reversion needs (add, multiply, powers, reciprocal,
  composition, derivative).
- ``revert_series``: two independent reversions, the Lagrange coefficient
  formula a_n = (1/n) [x^(n-1)] (x / f)^n and Newton iteration on series.
- ``pi_from_zeta3`` / ``pi_from_zeta3_centered``: the reversion about 0 of
  F(x) = 2 f(x/2) and the one about pi/2 of f itself.

Coefficients are mpf (pi appears in them); all arithmetic runs at the
caller's mpmath precision.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import mpmath as mp

from zeta_forge.exceptions import DomainError, InconsistencyError, InvalidParameterError
from zeta_forge.precision import (
    ConstantId,
    PrecisionContext,
    constant_working,
    eta_working,
    euler_number,
    to_decimal_string,
    zeta_working,
)

logger = logging.getLogger("zeta_forge.reversion")

MAX_ORDER = 200


# ---------------------------------------------------------------------------
# Power series
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PowerSeries:
    """sum_i coefficients[i] (x - center)^i + O((x - center)^(order + 1))."""

    coefficients: tuple[mp.mpf, ...]
    center: mp.mpf = mp.mpf(0)

    @classmethod
    def from_list(cls, coefficients: Sequence, order: int, center=0) -> "PowerSeries":
        """Pad with zeros or truncate to exactly ``order + 1`` coefficients."""
        padded = [mp.mpf(c) for c in coefficients[: order + 1]]
        padded += [mp.mp.zero] * (order + 1 - len(padded))
        return cls(tuple(padded), mp.mpf(center))

    @classmethod
    def identity(cls, order: int) -> "PowerSeries":
        return cls.from_list([0, 1], order)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, i: int) -> mp.mpf:
        return self.coefficients[i] if 0 <= i <= self.order else mp.mp.zero

    def _like(self, coefficients: Sequence) -> "PowerSeries":
        return PowerSeries.from_list(coefficients, self.order, self.center)

    def _check(self, other: "PowerSeries") -> int:
        if other.center != self.center:
            raise DomainError("Series about different centers cannot be combined.")
        return min(self.order, other.order)

    def __add__(self, other):
        if not isinstance(other, PowerSeries):
            return self._like([self[0] + other, *self.coefficients[1:]])
        order = self._check(other)
        return PowerSeries.from_list([self[i] + other[i] for i in range(order + 1)], order, self.center)

    __radd__ = __add__

    def __neg__(self) -> "PowerSeries":
        return self._like([-c for c in self.coefficients])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            return self._like([c * other for c in self.coefficients])
        order = self._check(other)
        out = [mp.mp.zero] * (order + 1)
        for i in range(order + 1):
            a = self[i]
            if a:
                for j in range(order + 1 - i):
                    out[i + j] += a * other[j]
        return PowerSeries.from_list(out, order, self.center)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "PowerSeries":
        if not isinstance(n, int) or n < 0:
            raise DomainError(f"Only non-negative integer powers are supported, got {n}.")
        result = self._like([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def reciprocal(self) -> "PowerSeries":
        """1 / self.

        Raises:
            DomainError: If the constant term is zero.
        """
        if self[0] == 0:
            raise DomainError("Series with zero constant term has no reciprocal.")
        out = [1 / self[0]]
        for n in range(1, self.order + 1):
            out.append(-mp.fsum(self[k] * out[n - k] for k in range(1, n + 1)) / self[0])
        return self._like(out)

    def derivative(self) -> "PowerSeries":
        """d/dx, one order shorter."""
        return PowerSeries.from_list(
            [i * self[i] for i in range(1, self.order + 1)], max(self.order - 1, 0), self.center
        )

    def shift_down(self) -> "PowerSeries":
        """(self - self[0]) / (x - center), one order shorter."""
        return PowerSeries.from_list(list(self.coefficients[1:]), max(self.order - 1, 0), self.center)

    def compose(self, inner: "PowerSeries") -> "PowerSeries":
        """self(inner(t)) as a series in t about ``inner.center``.

        Raises:
            DomainError: If inner does not start at this series' center.
        """
        if not mp.almosteq(inner[0], self.center):
            raise DomainError("Inner series must map its center to this series' center.")
        offset = inner - inner[0]
        order = min(self.order, inner.order)
        result = PowerSeries.from_list([self[order]], order, inner.center)
        for i in range(order - 1, -1, -1):
            result = result * offset + self[i]
        return result

    def __call__(self, x) -> mp.mpf:
        """Numeric value at x by Horner's rule."""
        t = mp.mpf(x) - self.center
        value = mp.mp.zero
        for c in reversed(self.coefficients):
            value = value * t + c
        return value

    def to_dict(self, ctx: PrecisionContext) -> dict:
        return {
            "center": to_decimal_string(self.center, ctx),
            "order": self.order,
            "coefficients": [to_decimal_string(c, ctx) for c in self.coefficients],
        }


# ---------------------------------------------------------------------------
# Reversion
# ---------------------------------------------------------------------------


class ReversionMethod(str, Enum):
    LAGRANGE = "lagrange"
    NEWTON = "newton"


def _local_part(f: PowerSeries, order: int) -> PowerSeries:
    """f - f(center) about 0, truncated."""
    if not 1 <= order <= MAX_ORDER:
        raise InvalidParameterError(f"Reversion order must be in [1, {MAX_ORDER}], got {order}.")
    if f.order < order:
        raise InvalidParameterError(f"Series of order {f.order} cannot be reverted to order {order}.")
    if f[1] == 0:
        raise DomainError("Series reversion needs a non-zero linear coefficient.")
    return PowerSeries.from_list([0, *f.coefficients[1:]], order)


def _revert_lagrange(h: PowerSeries, order: int) -> list[mp.mpf]:
    phi = h.shift_down().reciprocal()  # t / h(t)
    phi = PowerSeries.from_list(list(phi.coefficients), order)
    out = [mp.mp.zero]
    power = phi
    for n in range(1, order + 1):
        out.append(power[n - 1] / n)
        power = power * phi
    return out


def _revert_newton(h: PowerSeries, order: int) -> list[mp.mpf]:
    identity = PowerSeries.identity(order)
    dh = PowerSeries.from_list(list(h.derivative().coefficients), order)
    g = identity * (1 / h[1])
    steps = max(1, order.bit_length()) + 1
    for _ in range(steps):
        residual = h.compose(g) - identity
        g = g - residual * dh.compose(g).reciprocal()
    return list(g.coefficients)


def revert_series(
    f: PowerSeries, order: int, method: ReversionMethod | str = ReversionMethod.LAGRANGE
) -> PowerSeries:
    """Inverse series g with g(f(x)) = x + O((x - c)^(order + 1)).

    For f about c with f(c) = y0 the result is a series about y0 whose
    constant term is c.

    Raises:
        DomainError: If the linear coefficient is zero.
        InvalidParameterError: If the order is out of range or f is too short.
    """
    method = ReversionMethod(method)
    h = _local_part(f, order)
    coefficients = _revert_lagrange(h, order) if method is ReversionMethod.LAGRANGE else _revert_newton(h, order)
    coefficients[0] = f.center
    return PowerSeries.from_list(coefficients, order, f[0])


def revert_checked(f: PowerSeries, order: int, ctx: PrecisionContext, slack: int = 5) -> PowerSeries:
    """Lagrange reversion cross-checked against Newton iteration.

    Raises:
        InconsistencyError: If the two disagree beyond ``10^-(digits - slack)``
            relative to the coefficient size.
    """
    with ctx.workdps():
        lagrange = revert_series(f, order, ReversionMethod.LAGRANGE)
        newton = revert_series(f, order, ReversionMethod.NEWTON)
        tolerance = ctx.tolerance(slack)
        for i, (a, b) in enumerate(zip(lagrange.coefficients, newton.coefficients)):
            if abs(a - b) > tolerance * max(1, abs(a)):
                raise InconsistencyError(
                    f"Reversion methods disagree at order {i}: {mp.nstr(a, 12)} vs {mp.nstr(b, 12)}."
                )
    return lagrange


# ---------------------------------------------------------------------------
# pi from zeta(3)
# ---------------------------------------------------------------------------


def zeta3_generating_series(order: int, ctx: PrecisionContext) -> PowerSeries:
    """F(x) = 2 f(x/2) about 0, with the eta(2j) coefficients up to x^order.

    F(x) = (1/7)(pi x - x^2/4 + 4 sum_j eta(2j) pi^-2j
           (pi (x/2)^(2j+1) / (2j+1) - (x/2)^(2j+2) / (2j+2))).
    """
    if order < 2:
        raise InvalidParameterError(f"Series order must be at least 2, got {order}.")
    with ctx.workdps():
        pi = constant_working(ConstantId.PI, ctx)
        coefficients = [mp.mp.zero] * (order + 1)
        coefficients[1] = pi
        coefficients[2] = -mp.mpf(1) / 4
        for j in range(1, order // 2 + 1):
            weight = 4 * eta_working(2 * j, ctx) / pi ** (2 * j)
            if 2 * j + 1 <= order:
                coefficients[2 * j + 1] += weight * pi / ((2 * j + 1) * mp.mpf(2) ** (2 * j + 1))
            if 2 * j + 2 <= order:
                coefficients[2 * j + 2] -= weight / ((2 * j + 2) * mp.mpf(2) ** (2 * j + 2))
        return PowerSeries.from_list([c / 7 for c in coefficients], order)


def centered_series(order: int, ctx: PrecisionContext) -> PowerSeries:
    """f(x) about pi/2 from the secant (Euler number) expansion of csc.

    f(x) = zeta(3)/2 + (1/7)(pi^2 t / 4 + sum_j (-1)^j c_j t^(2j+1) / (2j+1)),
    c_j = pi^2 E_2j / (4 (2j)!) + E_(2j-2) / (2j-2)!,  t = x - pi/2.
    """
    if order < 1:
        raise InvalidParameterError(f"Series order must be at least 1, got {order}.")
    with ctx.workdps():
        pi = constant_working(ConstantId.PI, ctx)
        coefficients = [mp.mp.zero] * (order + 1)
        coefficients[0] = zeta_working(3, ctx) / 2
        coefficients[1] = pi ** 2 / 28
        for j in range(1, (order - 1) // 2 + 1):
            c_j = (
                pi ** 2 * euler_number(2 * j) / (4 * mp.factorial(2 * j))
                + euler_number(2 * j - 2) / mp.factorial(2 * j - 2)
            )
            sign = -1 if j % 2 else 1
            coefficients[2 * j + 1] = sign * c_j / (7 * (2 * j + 1))
        return PowerSeries.from_list(coefficients, order, pi / 2)


def pi_from_zeta3(order: int, ctx: PrecisionContext) -> mp.mpf:
    """G(zeta(3)) with G the order-``order`` reversion of ``zeta3_generating_series``."""
    if order < 2:
        raise InvalidParameterError(f"pi_from_zeta3 needs order >= 2, got {order}.")
    with ctx.workdps():
        g = revert_series(zeta3_generating_series(order, ctx), order)
        value = g(zeta_working(3, ctx))
    logger.debug("pi from zeta(3) at order %d: %s", order, mp.nstr(value, 15))
    return ctx.round(value)


def pi_from_zeta3_centered(order: int, ctx: PrecisionContext) -> mp.mpf:
    """pi/2 + sum a_n (zeta(3) - zeta(3)/2)^n from the reversion about pi/2."""
    if order < 1:
        raise InvalidParameterError(f"pi_from_zeta3_centered needs order >= 1, got {order}.")
    with ctx.workdps():
        g = revert_series(centered_series(order, ctx), order)
        value = g(zeta_working(3, ctx))
    return ctx.round(value)


def closed_form_coefficients(ctx: PrecisionContext) -> list[mp.mpf]:
    """The first five closed-form reversion coefficients, for comparison."""
    with ctx.workdps():
        pi = constant_working(ConstantId.PI, ctx)
        return [
            7 / pi,
            49 / (4 * pi ** 3),
            -343 * (pi ** 2 - 9) / (72 * pi ** 5),
            -2401 * (7 * pi ** 2 - 45) / (576 * pi ** 7),
            16807 * (4725 - 900 * pi ** 2 + 29 * pi ** 4) / (86400 * pi ** 9),
        ]
