"""
Series Catalog Module (Registry Pattern)
========================================

Every series representation the laboratory knows, registered under a short
id.  Each ``FormulaDescriptor`` carries:

- ``target``: what the series converges to (zeta(3), zeta(k), eta(k) or a
  constant identity), which decides the reference value it is scored against;
- ``params``: the integer parameters the formula takes (``k``, ``j`` ...);
- ``convergence``: geometric, power_law or dynamic.  Dynamic formulas are
  limits indexed by n = terms and need extra working digits, because their
  binomial-size terms cancel down to an O(1) result;
- ``citation``: a short verbatim anchor locating the identity in the source.

Evaluators are plain functions ``(params, terms, ctx) -> mpf`` that run at
the context's working precision; ``zeta_forge.evaluation`` wraps them with
timing, precision elevation and scoring.

The ``get_formula`` helper retrieves a descriptor by id.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Mapping

import mpmath as mp

from zeta_forge.exceptions import InvalidParameterError, UnknownFormulaError
from zeta_forge.factorial_sums import factorial_ratio_row
from zeta_forge.precision import (
    ConstantId,
    PrecisionContext,
    bernoulli,
    binomial_elevation,
    constant_working,
    euler_number,
    eta_working,
    to_mpf,
    zeta_even_closed_form,
    zeta_working,
)

Params = Mapping[str, int]
Evaluator = Callable[[Params, int, PrecisionContext], mp.mpf]
Reference = Callable[[Params, PrecisionContext], mp.mpf]
TailEstimate = Callable[[Params, int, PrecisionContext], mp.mpf]


class Target(str, Enum):
    ZETA3 = "zeta3"
    ZETA_N = "zeta_n"
    ETA_N = "eta_n"
    CONSTANT_IDENTITY = "constant_identity"


class Convergence(str, Enum):
    GEOMETRIC = "geometric"
    POWER_LAW = "power_law"
    DYNAMIC = "dynamic"


@dataclass(frozen=True)
class ParamSpec:
    name: str
    minimum: int
    description: str = ""


def _no_elevation(terms: int) -> int:
    return 0


@dataclass(frozen=True)
class FormulaDescriptor:
    """Metadata plus evaluator for one registered series."""

    id: str
    target: Target
    description: str
    citation: str
    convergence: Convergence
    evaluator: Evaluator = field(repr=False, compare=False)
    reference: Reference = field(repr=False, compare=False)
    params: tuple[ParamSpec, ...] = ()
    requires: tuple[str, ...] = ()
    min_terms: int = 1
    elevation: Callable[[int], int] = field(default=_no_elevation, repr=False, compare=False)
    tail_estimate: TailEstimate | None = field(default=None, repr=False, compare=False)

    def validate_params(self, params: Params) -> dict[str, int]:
        """Return a clean copy of *params*.

        Raises:
            InvalidParameterError: On missing, unexpected, non-integer or
                out-of-range parameters.
        """
        expected = {spec.name: spec for spec in self.params}
        unexpected = sorted(set(params) - set(expected))
        if unexpected:
            raise InvalidParameterError(
                f"Formula '{self.id}' takes no parameter(s) {', '.join(unexpected)}."
            )
        clean: dict[str, int] = {}
        for name, spec in expected.items():
            if name not in params:
                raise InvalidParameterError(f"Formula '{self.id}' requires parameter '{name}'.")
            value = params[name]
            if isinstance(value, bool) or not isinstance(value, int):
                raise InvalidParameterError(f"Parameter '{name}' must be an integer, got {value!r}.")
            if value < spec.minimum:
                raise InvalidParameterError(
                    f"Parameter '{name}' must be at least {spec.minimum}, got {value}."
                )
            clean[name] = value
        return clean

    def validate_terms(self, terms: int) -> None:
        if isinstance(terms, bool) or not isinstance(terms, int) or terms < self.min_terms:
            raise InvalidParameterError(
                f"Formula '{self.id}' needs at least {self.min_terms} term(s), got {terms!r}."
            )

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "target": self.target.value,
            "description": self.description,
            "citation": self.citation,
            "convergence": self.convergence.value,
            "params": [spec.name for spec in self.params],
            "requires": list(self.requires),
        }


# ---------------------------------------------------------------------------
# Shared helpers (all run at the caller's working precision)
# ---------------------------------------------------------------------------


def _pi(ctx: PrecisionContext) -> mp.mpf:
    return constant_working(ConstantId.PI, ctx)


def _ln2(ctx: PrecisionContext) -> mp.mpf:
    return constant_working(ConstantId.LN2, ctx)


def _eta(s: int, ctx: PrecisionContext) -> mp.mpf:
    """eta(s) for integer s >= 0; eta(0) = 1/2 is the Abel value."""
    if s == 0:
        return mp.mpf(1) / 2
    return eta_working(s, ctx)


def _zeta(s: int, ctx: PrecisionContext) -> mp.mpf:
    return zeta_working(s, ctx)


def _zeta_even_exact(k: int, ctx: PrecisionContext) -> mp.mpf:
    return zeta_even_closed_form(k, PrecisionContext(ctx.working_digits, ctx.guard))


def _sign(j: int) -> int:
    """(-1)^j."""
    return -1 if j % 2 else 1


def _log_digits(terms: int) -> int:
    # terms of size j^2 cancel to O(1/j)
    return 3 * len(str(terms)) + 2


def _zeta3_ref(params: Params, ctx: PrecisionContext) -> mp.mpf:
    return _zeta(3, ctx)


def _zeta_k_ref(params: Params, ctx: PrecisionContext) -> mp.mpf:
    return _zeta(params["k"], ctx)


def _eta_k_ref(params: Params, ctx: PrecisionContext) -> mp.mpf:
    return _eta(params["k"], ctx)


def _constant_ref(value: Callable[[PrecisionContext], mp.mpf]) -> Reference:
    return lambda params, ctx: value(ctx)


def _digamma_gap(terms: int) -> mp.mpf:
    """sum_{j>T} 1/(2j(2j+1)) = (psi(T+3/2) - psi(T+1)) / 2."""
    return (mp.digamma(terms + mp.mpf(3) / 2) - mp.digamma(terms + 1)) / 2


# ---------------------------------------------------------------------------
# zeta(3): logarithmic series
# ---------------------------------------------------------------------------


def _z3_log_alt(params: Params, terms: int, ctx: PrecisionContext) -> mp.mpf:
    total = mp.fsum(
        _sign(j) * ((2 * j + 1) + 2 * j * (j + 1) * mp.log(mp.mpf(j) / (j + 1)))
        for j in range(1, terms + 1)
    )
    return _pi(ctx) ** 2 / 7 * (1 + total)


def _z3_log_pos(params: Params, terms: int, ctx: PrecisionContext) -> mp.mpf:
    def term(j: int) -> mp.mpf:
        four_j2 = 4 * j * j
        log_ratio = mp.log(mp.mpf(2 * j - 1) / (2 * j + 1)) + 2 * j * mp.log(mp.mpf(four_j2) / (four_j2 - 1))
        return 1 + 2 * j * log_ratio

    return _pi(ctx) ** 2 / 7 * (1 + 2 * mp.fsum(term(j) for j in range(1, terms + 1)))


# ---------------------------------------------------------------------------
# zeta(3): eta-weighted series
# ---------------------------------------------------------------------------


def _eta_quad_sum(terms: int, ctx: PrecisionContext) -> mp.mpf:
    return mp.fsum(_eta(j, ctx) / ((j + 1) * (j + 2)) for j in range(1, terms + 1))


def _z3_eta_quad(params: Params, terms: int, ctx: PrecisionContext) -> mp.mpf:
    return 2 * _pi(ctx) ** 2 / 7 * _eta_quad_sum(terms, ctx)


def _z3_eta_quad_tail(params: Params, terms: int, ctx: PrecisionContext) -> mp.mpf:
    return 2 * _pi(ctx) ** 2 / 7 / (terms + 2)


def _z3_eta_quad_fast(params: Params, terms: int, ctx: PrecisionContext) -> mp.mpf:
    head = _eta(terms + 1, ctx) / (terms + 2)
    return 2 * _pi(ctx) ** 2 / 7 * (_eta_quad_sum(terms, ctx) + head)


def _z3_eta_even(params: Params, terms: int, ctx: PrecisionContext) -> mp.mpf:
    total = mp.fsum(_eta(2 * j, ctx) / ((2 * j + 1) * (2 * j + 2)) for j in range(1, terms + 1))
    return 2 * _pi(ctx) ** 2 / 7 * (mp.mpf(1) / 4 + total)


def _z3_eta_fast(params: Params, terms: int, ctx: PrecisionContext) -> mp.mpf:
    total = mp.fsum(
        (2 * j + 3) * _eta(2 * j, ctx) / (mp.mpf(2) ** (2 * j + 1) * (2 * j + 1) * (2 * j + 2))
        for j in range(1, terms + 1)
    )
    return 2 * _pi(ctx) ** 2 / 7 * (mp.mpf(3) / 8 + total)


def _z3_eta_k2k1(params: Params, terms: int, ctx: PrecisionContext) -> mp.mpf:
    total = mp.fsum((_eta(2 * k - 2, ctx) - 1) / (k * (2 * k - 1)) for k in range(1, terms + 1))
    return _pi(ctx) ** 2 / 7 * (2 * _ln2(ctx) + total)


def _z3_eta_jj1(params: Params, terms: int, ctx: PrecisionContext) -> mp.mpf:
    pi = _pi(ctx)
    total = mp.fsum(_eta(2 * j, ctx) / (j * (j + 1)) for j in range(1, terms + 1))
    return pi ** 2 / 7 * (mp.log(pi / 2) - mp.mpf(1) / 2 + total)


def _self_weighted_sum(terms: int, alternating: bool, ctx: PrecisionContext) -> mp.mpf:
    # j runs over 4 .. terms + 3
    return mp.fsum(
        (_sign(j) if alternating else 1) * _eta(j, ctx) / ((j + 1) * (j + 2))
        for j in range(4, terms + 4)
    )


def _z3_self_80p(params: Params, terms: int, ctx: PrecisionContext) -> mp.mpf:
    pi, ln2 = _pi(ctx), _ln2(ctx)
    prefactor = 80 * pi ** 2 / (280 + 3 * pi ** 2)
    head = pi ** 2 / 144 - ln2 / 6 + mp.mpf(1) / 2
    return prefactor * (head + _self_weighted_sum(terms, True, ctx))


def _z3_self_80m(params: Params, terms: int, ctx: PrecisionContext) -> mp.mpf:
    pi, ln2 = _pi(ctx), _ln2(ctx)
    prefactor = 80 * pi ** 2 / (280 - 3 * pi ** 2)
    head = pi ** 2 / 144 + ln2 / 6
    return prefactor * (head + _self_weighted_sum(terms, False, ctx))


def _z3_self_80m_tail(params: Params, terms: int, ctx: PrecisionContext) -> mp.mpf:
    pi = _pi(ctx)
    return 80 * pi ** 2 / (280 - 3 * pi ** 2) / (terms + 5)


def _z3_odd_eta_80(params: Params, terms: int, ctx: PrecisionContext) -> mp.mpf:
    # j runs over 2 .. terms + 1
    total = mp.fsum(_eta(2 * j + 1, ctx) / ((2 * j + 2) * (2 * j + 3)) for j in range(2, terms + 2))
    return mp.mpf(80) / 3 * (mp.mpf(1) / 4 - _ln2(ctx) / 6 - total)


def _z3_eta_odd_21(params: Params, terms: int, ctx: PrecisionContext) -> mp.mpf:
    def term(j: int) -> mp.mpf:
        weight = Fraction(2 ** (2 * j + 1) - 1, 2 ** (2 * j - 3) * (2 ** (2 * j) - 1)) * (2 * j) * (2 * j - 1)
        return to_mpf(weight) * _eta(2 * j + 1, ctx)

    return mp.fsum(term(j) for j in range(2, terms + 2)) / 21


def _z3_eta_geom(params: Params, terms: int, ctx: PrecisionContext) -> mp.mpf:
    pi = _pi(ctx)
    total = mp.fsum(_eta(3 + j, ctx) / mp.mpf(2) ** (j - 1) for j in range(1, terms + 1))
    return mp.mpf(2) / 3 * (4 * pi - 8 * _ln2(ctx) - pi ** 2 / 3 - total)


def _z3_eta_even_pow(params: Params, terms: int, ctx: PrecisionContext) -> mp.mpf:
    total = mp.fsum(
        _eta(2 * j, ctx) / ((2 ** (2 * j - 1) - 1) * (j + 1) * (2 * j + 1))
        for j in range(1, terms + 1)
    )
    return _pi(ctx) ** 2 / 7 * (1 - total)


def _z3_eta_shift_geom(params: Params, terms: int, ctx: PrecisionContext) -> mp.mpf:
    total = mp.fsum(
        (j + 1) * (j + 2) * _eta(3 + j, ctx) / (2 ** (j + 2) - 1) for j in range(1, terms + 1)
    )
    return total / 3


# ---------------------------------------------------------------------------
# zeta(3): zeta-weighted and special-number series
# ---------------------------------------------------------------------------


def _z3_zeta_shift_geom(params: Params, terms: int, ctx: PrecisionContext) -> mp.mpf:
    total = mp.fsum(
        (j + 1) * (j + 2) * _zeta(3 + j, ctx) / mp.mpf(2) ** (j + 2) for j in range(1, terms + 1)
    )
    return total / 3


def _z3_zeta_even_third(params: Params, terms: int, ctx: PrecisionContext) -> mp.mpf:
    total = mp.fsum(_zeta(2 * j, ctx) / ((j + 1) * (j + 2)) for j in range(1, terms + 1))
    return _pi(ctx) ** 2 / 3 * (total - mp.mpf(1) / 4)


def _z3_bern_zeta_even(params: Params, terms: int, ctx: PrecisionContext) -> mp.mpf:
    total = mp.fsum(
        _zeta_even_exact(k, ctx) / (mp.mpf(2) ** (2 * k + 1) * (k + 1) * (2 * k + 1))
        for k in range(1, terms + 1)
    )
    return 4 * _pi(ctx) ** 2 / 7 * (mp.mpf(1) / 4 - total)


def _z3_euler_num(params: Params, terms: int, ctx: PrecisionContext) -> mp.mpf:
    pi = _pi(ctx)

    def term(j: int) -> mp.mpf:
        bracket = (
            pi ** 2 / 4 * to_mpf(Fraction(euler_number(2 * j), math.factorial(2 * j)))
            + to_mpf(Fraction(euler_number(2 * j - 2), math.factorial(2 * j - 2)))
        )
        return _sign(j) * pi ** (2 * j + 1) / ((2 * j + 1) * mp.mpf(2) ** (2 * j + 1)) * bracket

    return mp.mpf(2) / 7 * (pi ** 3 / 8 + mp.fsum(term(j) for j in range(1, terms + 1)))


def _z3_gamma_glaisher(params: Params, terms: int, ctx: PrecisionContext) -> mp.mpf:
    gamma = constant_working(ConstantId.EULER_GAMMA, ctx)
    glaisher = constant_working(ConstantId.GLAISHER_A, ctx)
    total = mp.fsum(_zeta(2 * j + 1, ctx) / ((j + 1) * (j + 2)) for j in range(2, terms + 2))
    return -4 - 3 * gamma + 36 * mp.log(glaisher) - 6 * total


def _z3_gamma_glaisher_all(params: Params, terms: int, ctx: PrecisionContext) -> mp.mpf:
    gamma = constant_working(ConstantId.EULER_GAMMA, ctx)
    glaisher = constant_working(ConstantId.GLAISHER_A, ctx)
    total = mp.fsum(_zeta(j, ctx) / ((j + 1) * (j + 2)) for j in range(4, terms + 4))
    return -mp.mpf(5) / 18 * _pi(ctx) ** 2 - mp.mpf(10) / 3 * gamma + 40 * mp.log(glaisher) - 20 * total


# ---------------------------------------------------------------------------
# zeta(3): binomial and factorial-ratio limits
# ---------------------------------------------------------------------------


def _binomial_eta_inner(k: int, ctx: PrecisionContext) -> mp.mpf:
    """sum_{j=1}^{k-2} (-1)^j C(k, j+2) eta(j)."""
    return mp.fsum(_sign(j) * math.comb(k, j + 2) * _eta(j, ctx) for j in range(1, k - 1))


def _z3_binom_eta(params: Params, terms: int, ctx: PrecisionContext) -> mp.mpf:
    # k runs over 4 .. terms + 3
    total = mp.fsum(
        mp.mpf(k - 2) / 4 + _binomial_eta_inner(k, ctx) / k for k in range(4, terms + 4)
    )
    return 4 * _pi(ctx) ** 2 / 7 * (_ln2(ctx) / 3 - total)


def _z3_binom_eta_35(params: Params, terms: int, ctx: PrecisionContext) -> mp.mpf:
    pi = _pi(ctx)
    # k runs over 6 .. terms + 5
    total = mp.fsum(
        (k - 2) + 4 * _binomial_eta_inner(k, ctx) / k for k in range(6, terms + 6)
    )
    head = -5 - 5 * pi ** 2 / 12 + 40 * _ln2(ctx) / 3
    return 35 * pi ** 2 / (7 * (35 - 3 * pi ** 2)) * (head - total)


def _z3_bigenergy(params: Params, terms: int, ctx: PrecisionContext) -> mp.mpf:
    n = terms
    falling = (n + 1) * (n + 2) * (n + 3) * (n + 4) * (n + 5)
    total = mp.mpf(0)
    for j in range(1, n - 4):
        # n! / ((j+5) (j+5)! (n-j)!) = C(n+5, j+5) / ((j+5) (n+1)...(n+5))
        weight = Fraction(math.comb(n + 5, j + 5), (j + 5) * falling)
        term = to_mpf(weight) * _eta(3 + j, ctx)
        total += term if j % 2 else -term
    return 800 * total


def _z3_fact_ln(params: Params, terms: int, ctx: PrecisionContext) -> mp.mpf:
    n = terms
    row = factorial_ratio_row(n)
    total = mp.fsum(_sign(j) * to_mpf(row[j]) * j * j * mp.log(j) for j in range(2, n))
    return 4 * _pi(ctx) ** 2 / 7 * total


def _z3_fact_logratio(params: Params, terms: int, ctx: PrecisionContext) -> mp.mpf:
    n = terms
    row = factorial_ratio_row(n)

    def weight(j: int) -> mp.mpf:
        four_j2 = 4 * j * j
        return mp.log(mp.mpf(2 * j - 1) / (2 * j + 1)) + j * mp.log(mp.mpf(four_j2) / (four_j2 - 1))

    total = mp.fsum(_sign(j) * to_mpf(row[j]) * j * weight(j) for j in range(1, n + 1))
    return 2 * _pi(ctx) ** 2 / 7 * total


# ---------------------------------------------------------------------------
# zeta(k) and eta(k) recurrences
# ---------------------------------------------------------------------------


def _zn_even_step(params: Params, terms: int, ctx: PrecisionContext) -> mp.mpf:
    n = params["k"]
    total = mp.fsum(
        to_mpf(Fraction(2 ** (2 * i + n) - 1, 2 ** (4 * i)) * math.comb(n + 2 * i - 1, n - 1))
        * _zeta(n + 2 * i, ctx)
        for i in range(1, terms + 1)
    )
    return total / ((2 ** (n - 1) - 1) * (2 ** n - 1))


def _zn_all_step(params: Params, terms: int, ctx: PrecisionContext) -> mp.mpf:
    n = params["k"]
    total = mp.fsum(
        to_mpf(Fraction(math.comb(n + i - 1, i), 2 ** (i + 1))) * _zeta(n + i, ctx)
        for i in range(1, terms + 1)
    )
    return total / (2 ** (n - 1) - 1)


def _eta_step(params: Params, terms: int, ctx: PrecisionContext) -> mp.mpf:
    k = params["k"]
    total = mp.fsum(
        to_mpf(Fraction(math.comb(k + j - 1, j), 2 ** (k + j - 1) - 1)) * _eta(k + j, ctx)
        for j in range(1, terms + 1)
    )
    return total / 2


def _zk_minus1(params: Params, terms: int, ctx: PrecisionContext) -> mp.mpf:
    k = params["k"]
    total = mp.fsum(
        math.comb(j + k - 1, k - 2) * (_zeta(k + j, ctx) - 1) for j in range(1, terms + 1)
    )
    return (k - total) / (k - 1)


def _const_zeta_unit(params: Params, terms: int, ctx: PrecisionContext) -> mp.mpf:
    k = params["k"]
    return mp.fsum(
        math.comb(j + k - 1, j) * (_zeta(k + j, ctx) - 1) for j in range(1, terms + 1)
    )


# ---------------------------------------------------------------------------
# Constant identities
# ---------------------------------------------------------------------------


def _const_quarter(params: Params, terms: int, ctx: PrecisionContext) -> mp.mpf:
    return mp.fsum(_eta(2 * j - 1, ctx) / ((2 * j) * (2 * j + 1)) for j in range(1, terms + 1))


def _const_lnpi2(params: Params, terms: int, ctx: PrecisionContext) -> mp.mpf:
    return mp.fsum(_eta(2 * j, ctx) / ((2 * j) * (2 * j + 1)) for j in range(1, terms + 1))


def _digamma_tail(params: Params, terms: int, ctx: PrecisionContext) -> mp.mpf:
    return _digamma_gap(terms)


def _const_pi4(params: Params, terms: int, ctx: PrecisionContext) -> mp.mpf:
    return mp.fsum(_eta(j, ctx) / mp.mpf(2) ** j for j in range(1, terms + 1))


def _bern_from_eta(params: Params, terms: int, ctx: PrecisionContext) -> mp.mpf:
    j, n = params["j"], terms
    row = factorial_ratio_row(n)
    total = mp.fsum(
        _sign(i + j) * to_mpf(row[i]) / mp.mpf(i) ** (2 * j) for i in range(1, n + 1)
    )
    return mp.factorial(2 * j) / ((2 ** (2 * j - 1) - 1) * _pi(ctx) ** (2 * j)) * total


def _bernoulli_ref(params: Params, ctx: PrecisionContext) -> mp.mpf:
    return to_mpf(bernoulli(2 * params["j"]))


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

_K_ZETA = ParamSpec("k", 2, "zeta argument")
_K_ETA = ParamSpec("k", 1, "eta argument")

_DESCRIPTORS: tuple[FormulaDescriptor, ...] = (
    FormulaDescriptor(
        "Z3_LOG_ALT", Target.ZETA3,
        "(pi^2/7)(1 + sum (-1)^j((2j+1) + 2j(j+1) ln(j/(j+1))))",
        "(2j+1)+2j(j+1)\\ln", Convergence.POWER_LAW, _z3_log_alt, _zeta3_ref,
        requires=("pi",), elevation=_log_digits,
    ),
    FormulaDescriptor(
        "Z3_LOG_POS", Target.ZETA3,
        "(pi^2/7)(1 + 2 sum (1 + 2j ln((2j-1)/(2j+1) (4j^2/(4j^2-1))^(2j))))",
        "1+2j\\left(   \\ln", Convergence.POWER_LAW, _z3_log_pos, _zeta3_ref,
        requires=("pi",), elevation=_log_digits,
    ),
    FormulaDescriptor(
        "Z3_ETA_QUAD", Target.ZETA3,
        "(2 pi^2/7) sum_{j>=1} eta(j)/((j+1)(j+2))",
        "converges much more rapidly", Convergence.POWER_LAW, _z3_eta_quad, _zeta3_ref,
        requires=("pi", "eta"), tail_estimate=_z3_eta_quad_tail,
    ),
    FormulaDescriptor(
        "Z3_ETA_QUAD_FAST", Target.ZETA3,
        "Z3_ETA_QUAD plus the head term eta(T+1)/(T+2)",
        "converges much more rapidly", Convergence.GEOMETRIC, _z3_eta_quad_fast, _zeta3_ref,
        requires=("pi", "eta"),
    ),
    FormulaDescriptor(
        "Z3_ETA_EVEN", Target.ZETA3,
        "(2 pi^2/7)(1/4 + sum eta(2j)/((2j+1)(2j+2)))",
        "\\frac{1}{4}+\\sum", Convergence.POWER_LAW, _z3_eta_even, _zeta3_ref,
        requires=("pi", "eta"),
    ),
    FormulaDescriptor(
        "Z3_ETA_FAST", Target.ZETA3,
        "(2 pi^2/7)(3/8 + sum (2j+3) eta(2j)/(2^(2j+1)(2j+1)(2j+2)))",
        "accurate to 7 decimal places", Convergence.GEOMETRIC, _z3_eta_fast, _zeta3_ref,
        requires=("pi", "eta"),
    ),
    FormulaDescriptor(
        "Z3_ETA_K2K1", Target.ZETA3,
        "(pi^2/7)(2 ln 2 + sum_{k>=1} (eta(2k-2) - 1)/(k(2k-1))), eta(0) = 1/2",
        "2\\ln\\left(2\\right)+\\sum_{k=1}^{\\infty}\\frac{1}{k(2k-1)}",
        Convergence.GEOMETRIC, _z3_eta_k2k1, _zeta3_ref, requires=("pi", "ln2", "eta"),
    ),
    FormulaDescriptor(
        "Z3_ETA_JJ1", Target.ZETA3,
        "(pi^2/7)(ln(pi/2) - 1/2 + sum eta(2j)/(j(j+1)))",
        "\\ln(\\frac{\\pi}{2})-\\frac{1}{2}", Convergence.POWER_LAW, _z3_eta_jj1, _zeta3_ref,
        requires=("pi", "eta"),
    ),
    FormulaDescriptor(
        "Z3_SELF_80P", Target.ZETA3,
        "80pi^2/(280+3pi^2) (pi^2/144 - ln2/6 + 1/2 + sum_{j>=4} (-1)^j eta(j)/((j+1)(j+2)))",
        "\\frac{80\\pi^2}{280+3\\pi^2}", Convergence.POWER_LAW, _z3_self_80p, _zeta3_ref,
        requires=("pi", "ln2", "eta"),
    ),
    FormulaDescriptor(
        "Z3_SELF_80M", Target.ZETA3,
        "80pi^2/(280-3pi^2) (pi^2/144 + ln2/6 + sum_{j>=4} eta(j)/((j+1)(j+2)))",
        "\\frac{80\\pi^2}{280-3\\pi^2}", Convergence.POWER_LAW, _z3_self_80m, _zeta3_ref,
        requires=("pi", "ln2", "eta"), tail_estimate=_z3_self_80m_tail,
    ),
    FormulaDescriptor(
        "Z3_ODD_ETA_80", Target.ZETA3,
        "(80/3)(1/4 - ln2/6 - sum_{j>=2} eta(2j+1)/((2j+2)(2j+3)))",
        "\\frac{80}{3}", Convergence.POWER_LAW, _z3_odd_eta_80, _zeta3_ref,
        requires=("ln2", "eta"),
    ),
    FormulaDescriptor(
        "Z3_ETA_ODD_21", Target.ZETA3,
        "(1/21) sum_{j>=2} (2^(2j+1)-1)/(2^(2j-3)(2^(2j)-1)) (2j)(2j-1) eta(2j+1)",
        "\\frac{2^{2j+1}-1}{2^{2j-3}", Convergence.GEOMETRIC, _z3_eta_odd_21, _zeta3_ref,
        requires=("eta",),
    ),
    FormulaDescriptor(
        "Z3_EULER_NUM", Target.ZETA3,
        "(2/7)(pi^3/8 + sum (-1)^j pi^(2j+1)/((2j+1)2^(2j+1)) (pi^2 E_2j/(4(2j)!) + E_(2j-2)/(2j-2)!))",
        "\\frac{\\pi^2}{4(2j)!}E_{2j}", Convergence.GEOMETRIC, _z3_euler_num, _zeta3_ref,
        requires=("pi", "euler_number"),
    ),
    FormulaDescriptor(
        "Z3_BERN_ZETA_EVEN", Target.ZETA3,
        "(4pi^2/7)(1/4 - sum zeta(2k)/(2^(2k+1)(k+1)(2k+1))), zeta(2k) from B_2k",
        "Note: This formula converges quickly.", Convergence.GEOMETRIC, _z3_bern_zeta_even,
        _zeta3_ref, requires=("pi", "bernoulli"),
    ),
    FormulaDescriptor(
        "Z3_BINOM_ETA", Target.ZETA3,
        "(4pi^2/7)(ln2/3 - sum_{k>=4} ((k-2)/4 + (1/k) sum_j (-1)^j C(k,j+2) eta(j)))",
        "\\frac{k-2}{4}+\\frac{1}{k}\\sum", Convergence.GEOMETRIC, _z3_binom_eta, _zeta3_ref,
        requires=("pi", "ln2", "eta"), elevation=lambda terms: binomial_elevation(terms + 3),
    ),
    FormulaDescriptor(
        "Z3_BINOM_ETA_35", Target.ZETA3,
        "35pi^2/(7(35-3pi^2)) (-5 - 5pi^2/12 + 40ln2/3 - sum_{k>=6} ((k-2) + (4/k) sum_j (-1)^j C(k,j+2) eta(j)))",
        "\\frac{35\\pi^2}{7(35-3\\pi^2)}", Convergence.GEOMETRIC, _z3_binom_eta_35, _zeta3_ref,
        requires=("pi", "ln2", "eta"), elevation=lambda terms: binomial_elevation(terms + 5),
    ),
    FormulaDescriptor(
        "Z3_BIGENERGY", Target.ZETA3,
        "lim 800 sum_{j=1}^{n-5} (-1)^(j+1) n!/((j+5)(j+5)!(n-j)!) eta(3+j), n = terms",
        "800\\sum_{j=1}^{n-5}", Convergence.DYNAMIC, _z3_bigenergy, _zeta3_ref,
        requires=("eta",), min_terms=6, elevation=binomial_elevation,
    ),
    FormulaDescriptor(
        "Z3_FACT_LN", Target.ZETA3,
        "(4pi^2/7) lim sum_{j<n} (-1)^j j^2 (n!)^2/((n-j)!(n+j)!) ln j, n = terms",
        "\\frac{(n!)^2j^2}{(n-j)!(n+j)!}\\ln(j)", Convergence.DYNAMIC, _z3_fact_ln, _zeta3_ref,
        requires=("pi",), min_terms=2, elevation=binomial_elevation,
    ),
    FormulaDescriptor(
        "Z3_FACT_LOGRATIO", Target.ZETA3,
        "(2pi^2/7) lim sum (-1)^j j (n!)^2/((n-j)!(n+j)!) ln((2j-1)/(2j+1) (4j^2/(4j^2-1))^j), n = terms",
        "j\\ln\\left(1-\\frac{1}{4j^2}\\right)", Convergence.DYNAMIC, _z3_fact_logratio,
        _zeta3_ref, requires=("pi",), min_terms=2, elevation=binomial_elevation,
    ),
    FormulaDescriptor(
        "Z3_ETA_GEOM", Target.ZETA3,
        "(2/3)(4pi - 8ln2 - pi^2/3 - sum 2^-(j-1) eta(3+j))",
        "4\\pi-8\\ln(2)", Convergence.GEOMETRIC, _z3_eta_geom, _zeta3_ref,
        requires=("pi", "ln2", "eta"),
    ),
    FormulaDescriptor(
        "Z3_GAMMA_GLAISHER", Target.ZETA3,
        "-4 - 3 gamma + 36 ln A - 6 sum_{j>=2} zeta(2j+1)/((j+1)(j+2))",
        "where $\\gamma$ is the Euler gamma constant", Convergence.POWER_LAW,
        _z3_gamma_glaisher, _zeta3_ref, requires=("euler_gamma", "glaisher_A", "zeta"),
    ),
    FormulaDescriptor(
        "Z3_GAMMA_GLAISHER_ALL", Target.ZETA3,
        "-(5/18)pi^2 - (10/3)gamma + 40 ln A - 20 sum_{j>=4} zeta(j)/((j+1)(j+2))",
        "-\\frac{5}{18}\\pi^2-\\frac{10}{3}\\gamma+40\\ln(A)", Convergence.POWER_LAW,
        _z3_gamma_glaisher_all, _zeta3_ref,
        requires=("pi", "euler_gamma", "glaisher_A", "zeta"),
    ),
    FormulaDescriptor(
        "Z3_ETA_EVEN_POW", Target.ZETA3,
        "(pi^2/7)(1 - sum eta(2j)/((2^(2j-1)-1)(j+1)(2j+1)))",
        "\\frac{1}{(2^{2j-1}-1)(j+1)(2j+1)}\\eta(2j)", Convergence.GEOMETRIC, _z3_eta_even_pow, _zeta3_ref,
        requires=("pi", "eta"),
    ),
    FormulaDescriptor(
        "Z3_ZETA_EVEN_THIRD", Target.ZETA3,
        "(pi^2/3)(-1/4 + sum zeta(2j)/((j+1)(j+2)))",
        "\\frac{1}{3}\\pi^2\\Bigl(-\\frac{1}{4}", Convergence.POWER_LAW, _z3_zeta_even_third,
        _zeta3_ref, requires=("pi", "zeta"),
    ),
    FormulaDescriptor(
        "Z3_ZETA_SHIFT_GEOM", Target.ZETA3,
        "(1/3) sum (j+1)(j+2) zeta(3+j)/2^(j+2)",
        "\\frac{1}{2^{j+2}}(j+1)(j+2)\\zeta(3+j)", Convergence.GEOMETRIC, _z3_zeta_shift_geom,
        _zeta3_ref, requires=("zeta",),
    ),
    FormulaDescriptor(
        "Z3_ETA_SHIFT_GEOM", Target.ZETA3,
        "(1/3) sum (j+1)(j+2) eta(3+j)/(2^(j+2)-1)",
        "\\frac{1}{2^{j+2}-1}(j+1)(j+2)\\eta(3+j)", Convergence.GEOMETRIC, _z3_eta_shift_geom,
        _zeta3_ref, requires=("eta",),
    ),
    FormulaDescriptor(
        "ZN_EVEN_STEP", Target.ZETA_N,
        "zeta(k) = 1/((2^(k-1)-1)(2^k-1)) sum_{i>=1} (2^(2i+k)-1)/2^(4i) C(k+2i-1,k-1) zeta(k+2i)",
        "by expanding sums of the form", Convergence.GEOMETRIC, _zn_even_step, _zeta_k_ref,
        params=(_K_ZETA,), requires=("zeta",),
    ),
    FormulaDescriptor(
        "ZN_ALL_STEP", Target.ZETA_N,
        "zeta(k) = 1/(2^(k-1)-1) sum_{i>=1} 2^-(i+1) C(k+i-1,i) zeta(k+i)",
        "\\frac{1}{2^{i+1}}\\binom{n+i-1}{i}", Convergence.GEOMETRIC, _zn_all_step, _zeta_k_ref,
        params=(_K_ZETA,), requires=("zeta",),
    ),
    FormulaDescriptor(
        "ETA_STEP", Target.ETA_N,
        "eta(k) = (1/2) sum_{j>=1} C(k+j-1,j) eta(k+j)/(2^(k+j-1)-1)",
        "\\eta(k)&=\\frac{1}{2}\\sum", Convergence.GEOMETRIC, _eta_step, _eta_k_ref,
        params=(_K_ETA,), requires=("eta",),
    ),
    FormulaDescriptor(
        "ZK_MINUS1", Target.ZETA_N,
        "zeta(k) = (k - sum_{j>=1} C(j+k-1,k-2)(zeta(k+j)-1))/(k-1)",
        "(\\zeta(k+j)-1)", Convergence.GEOMETRIC, _zk_minus1, _zeta_k_ref,
        params=(_K_ZETA,), requires=("zeta",),
    ),
    FormulaDescriptor(
        "CONST_ZETA_UNIT", Target.CONSTANT_IDENTITY,
        "sum_{j>=1} C(j+k-1,j)(zeta(k+j)-1) = 1",
        "1=\\sum_{j=1}^{\\infty}\\binom{j+k-1}{j}(\\zeta(k+j)-1)", Convergence.GEOMETRIC,
        _const_zeta_unit, _constant_ref(lambda ctx: mp.mpf(1)),
        params=(_K_ETA,), requires=("zeta",),
    ),
    FormulaDescriptor(
        "CONST_QUARTER", Target.CONSTANT_IDENTITY,
        "sum eta(2j-1)/((2j)(2j+1)) = 1/4",
        "\\eta(2j-1)=\\frac{1}{4}", Convergence.POWER_LAW, _const_quarter,
        _constant_ref(lambda ctx: mp.mpf(1) / 4), requires=("eta",), tail_estimate=_digamma_tail,
    ),
    FormulaDescriptor(
        "CONST_LNPI2", Target.CONSTANT_IDENTITY,
        "sum eta(2j)/((2j)(2j+1)) = (1/2)(1 - ln(pi/2))",
        "\\frac{1}{2}\\left(1-\\ln\\left(\\frac{\\pi}{2}\\right)\\right)", Convergence.POWER_LAW,
        _const_lnpi2, _constant_ref(lambda ctx: (1 - mp.log(_pi(ctx) / 2)) / 2),
        requires=("pi", "eta"), tail_estimate=_digamma_tail,
    ),
    FormulaDescriptor(
        "CONST_PI4", Target.CONSTANT_IDENTITY,
        "sum 2^-j eta(j) = pi/4",
        "\\sum_{j=1}^{\\infty}\\frac{1}{2^j}\\eta(j)=\\frac{\\pi}{4}", Convergence.GEOMETRIC,
        _const_pi4, _constant_ref(lambda ctx: _pi(ctx) / 4), requires=("pi", "eta"),
    ),
    FormulaDescriptor(
        "BERN_FROM_ETA", Target.CONSTANT_IDENTITY,
        "B_2j = (2j)!/((2^(2j-1)-1) pi^(2j)) lim sum (-1)^(i+j) (n!)^2/(i^(2j)(n-i)!(n+i)!), n = terms",
        "(2^{2j-1}-1)\\pi^{2j}", Convergence.DYNAMIC, _bern_from_eta, _bernoulli_ref,
        params=(ParamSpec("j", 1, "Bernoulli half-index"),), requires=("pi", "bernoulli"),
    ),
)

FORMULAS: dict[str, FormulaDescriptor] = {d.id: d for d in _DESCRIPTORS}


def get_formula(formula_id: str) -> FormulaDescriptor:
    """Look up a descriptor by id.

    Raises:
        UnknownFormulaError: If *formula_id* is not registered.
    """
    try:
        return FORMULAS[formula_id]
    except KeyError:
        supported = ", ".join(FORMULAS)
        raise UnknownFormulaError(f"Unknown formula '{formula_id}'. Supported: {supported}")


def list_formulas() -> list[FormulaDescriptor]:
    """All registered descriptors in registration order."""
    return list(FORMULAS.values())
