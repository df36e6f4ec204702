"""
Quadrature Module (Registry Pattern)
====================================

Trigonometric integral representations of zeta(3), zeta(5), zeta(7) and the
Catalan / ln 2 lemmas behind them, evaluated by double-exponential
(tanh-sinh) quadrature.

- ``IntegrandDescriptor``: integrand, interval (in multiples of pi), the
  affine map from the raw integral to the represented value, the reference
  it is scored against and the endpoints where it is genuinely singular.
- ``integrate``: tanh-sinh on every subinterval, summed error estimates,
  ``AccuracyError`` when the target digits are not reached.
- ``integrand_value``: point evaluation; removable singularities at the
  endpoints use the series of x/sin x and x cot x.

The ``get_integrand`` helper retrieves a descriptor by id.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable

import mpmath as mp

from zeta_forge.evaluation import EvaluationResult
from zeta_forge.exceptions import AccuracyError, DomainError, InvalidParameterError, UnknownFormulaError
from zeta_forge.precision import ConstantId, PrecisionContext, constant_working, to_mpf, zeta_working

logger = logging.getLogger("zeta_forge.quadrature")

MIN_LEVELS = 3
DEFAULT_LEVELS = 8

RealFunction = Callable[[mp.mpf], mp.mpf]


class QuadTarget(str, Enum):
    ZETA3 = "zeta3"
    ZETA5 = "zeta5"
    ZETA7 = "zeta7"
    CLOSED_FORM = "closed_form"


class Weight(str, Enum):
    FULL = "full"
    REDUCED = "reduced"


@dataclass(frozen=True)
class QuadratureSpec:
    """Maximum tanh-sinh degree and the digits the result must reach."""

    levels: int = DEFAULT_LEVELS
    target_digits: int | None = None

    def __post_init__(self) -> None:
        if isinstance(self.levels, bool) or not isinstance(self.levels, int) or self.levels < MIN_LEVELS:
            raise InvalidParameterError(f"Quadrature levels must be at least {MIN_LEVELS}, got {self.levels!r}.")
        if self.target_digits is not None and self.target_digits < 1:
            raise InvalidParameterError(f"Target digits must be positive, got {self.target_digits}.")


# ---------------------------------------------------------------------------
# Removable singularities
# ---------------------------------------------------------------------------


def _series_cutoff() -> mp.mpf:
    return mp.mpf(10) ** (-(mp.mp.dps // 4))


def xcsc(x: mp.mpf) -> mp.mpf:
    """x / sin x, by its series near 0."""
    if abs(x) < _series_cutoff():
        x2 = x * x
        return 1 + x2 / 6 + 7 * x2 ** 2 / 360 + 31 * x2 ** 3 / 15120
    return x / mp.sin(x)


def xcot(x: mp.mpf) -> mp.mpf:
    """x cot x, by its series near 0."""
    if abs(x) < _series_cutoff():
        x2 = x * x
        return 1 - x2 / 3 - x2 ** 2 / 45 - 2 * x2 ** 3 / 945
    return x * mp.cot(x)


def _times_log(x: mp.mpf, log_part: RealFunction) -> mp.mpf:
    """x * log_part(x), continued by 0 at x = 0."""
    return mp.mp.zero if x == 0 else x * log_part(x)


def _ln_csc_cot(x: mp.mpf) -> mp.mpf:
    # csc x + cot x = (1 + cos x) / sin x
    return mp.log1p(mp.cos(x)) - mp.log(mp.sin(x))


def _csc_weight(x: mp.mpf) -> mp.mpf:
    """x (pi - x) csc x, removable at 0 and pi."""
    if x <= mp.pi / 2:
        return (mp.pi - x) * xcsc(x)
    return x * xcsc(mp.pi - x)


def _cot_times(poly: RealFunction) -> RealFunction:
    """x -> x * poly(x) * cot x, written as poly(x) * (x cot x)."""
    return lambda x: poly(x) * xcot(x)


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntegrandDescriptor:
    """One registered integral representation.

    ``points`` and ``singular`` are multiples of pi.  ``combine`` maps the
    raw integral to the represented value and must be affine, so the error
    estimate maps through it as well.
    """

    id: str
    target: QuadTarget
    description: str
    citation: str
    integrand: RealFunction = field(repr=False, compare=False)
    combine: Callable[[mp.mpf, PrecisionContext], mp.mpf] = field(repr=False, compare=False)
    reference: Callable[[PrecisionContext], mp.mpf] = field(repr=False, compare=False)
    points: tuple[Fraction, ...] = (Fraction(0), Fraction(1, 4), Fraction(1, 2))
    singular: tuple[Fraction, ...] = ()
    weight: Weight = Weight.FULL
    extra_digits: int = 0

    def interval(self) -> tuple[mp.mpf, mp.mpf]:
        return to_mpf(self.points[0]) * mp.pi, to_mpf(self.points[-1]) * mp.pi

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "target": self.target.value,
            "description": self.description,
            "citation": self.citation,
            "interval": [str(p) + "*pi" if p else "0" for p in (self.points[0], self.points[-1])],
            "weight": self.weight.value,
        }


def _pi(ctx: PrecisionContext) -> mp.mpf:
    return constant_working(ConstantId.PI, ctx)


def _ln2(ctx: PrecisionContext) -> mp.mpf:
    return constant_working(ConstantId.LN2, ctx)


def _catalan(ctx: PrecisionContext) -> mp.mpf:
    return constant_working(ConstantId.CATALAN_G, ctx)


def _scaled(factor: Callable[[PrecisionContext], mp.mpf]):
    return lambda integral, ctx: factor(ctx) * integral


def _zeta_ref(s: int) -> Callable[[PrecisionContext], mp.mpf]:
    return lambda ctx: zeta_working(s, ctx)


_ZETA3, _ZETA5, _ZETA7 = _zeta_ref(3), _zeta_ref(5), _zeta_ref(7)
_HALF = (Fraction(0), Fraction(1, 4), Fraction(1, 2))
_FULL = (Fraction(0), Fraction(1, 2), Fraction(1))
_AT_ZERO = (Fraction(0),)
_AT_HALF_PI = (Fraction(1, 2),)
_BOTH = (Fraction(0), Fraction(1, 2))


def _cot_variant(id_: str, factor, poly: RealFunction, citation: str, weight=Weight.FULL, extra=0):
    return IntegrandDescriptor(
        id_, QuadTarget.ZETA3, f"{id_.lower()} polynomial multiple of x(pi-2x) cot x",
        citation, _cot_times(poly), _scaled(factor), _ZETA3, weight=weight, extra_digits=extra,
    )


_DESCRIPTORS: tuple[IntegrandDescriptor, ...] = (
    IntegrandDescriptor(
        "CSC_HALF", QuadTarget.ZETA3, "(2/7) int_0^{pi/2} x(pi-x) csc x dx",
        "(x(\\pi-x)) \\csc", _csc_weight, _scaled(lambda ctx: mp.mpf(2) / 7), _ZETA3,
    ),
    IntegrandDescriptor(
        "CSC_FULL", QuadTarget.ZETA3, "(1/7) int_0^pi x(pi-x) csc x dx",
        "\\frac{1}{7}\\int_{0}^{\\pi}(x(\\pi-x)) \\csc", _csc_weight,
        _scaled(lambda ctx: mp.mpf(1) / 7), _ZETA3, points=_FULL,
    ),
    IntegrandDescriptor(
        "LNSIN", QuadTarget.ZETA3, "(4/7) int_0^{pi/2} (4x-pi) ln(sin x) dx",
        "(4x-\\pi)\\ln(\\sin(x))", lambda x: (4 * x - mp.pi) * mp.log(mp.sin(x)),
        _scaled(lambda ctx: mp.mpf(4) / 7), _ZETA3, singular=_AT_ZERO,
    ),
    IntegrandDescriptor(
        "LNSIN_X", QuadTarget.ZETA3, "(4/7)(pi^2 ln2 / 2 + 4 int_0^{pi/2} x ln(sin x) dx)",
        "\\frac{1}{2}\\pi^2\\ln(2)+4\\int_{0}^{\\pi/2}x \\ln(\\sin(x))dx",
        lambda x: _times_log(x, lambda t: mp.log(mp.sin(t))),
        lambda i, ctx: mp.mpf(4) / 7 * (_pi(ctx) ** 2 * _ln2(ctx) / 2 + 4 * i), _ZETA3,
    ),
    IntegrandDescriptor(
        "LNTAN_X", QuadTarget.ZETA3, "(8/7) int_0^{pi/2} x ln(tan x) dx",
        "\\frac{8}{7}\\int_{0}^{\\pi/2}x \\ln(\\tan(x))",
        lambda x: _times_log(x, lambda t: mp.log(mp.tan(t))),
        _scaled(lambda ctx: mp.mpf(8) / 7), _ZETA3, singular=_AT_HALF_PI,
    ),
    IntegrandDescriptor(
        "LNTAN_4X", QuadTarget.ZETA3, "(2/7) int_0^{pi/2} (4x-pi) ln(tan x) dx",
        "(4x-\\pi) \\ln(\\tan(x))", lambda x: (4 * x - mp.pi) * mp.log(mp.tan(x)),
        _scaled(lambda ctx: mp.mpf(2) / 7), _ZETA3, singular=_BOTH,
    ),
    IntegrandDescriptor(
        "LNCOS", QuadTarget.ZETA3, "(4/7) int_0^{pi/2} (pi-4x) ln(cos x) dx",
        "(\\pi-4x)\\ln(\\cos(x))", lambda x: (mp.pi - 4 * x) * mp.log(mp.cos(x)),
        _scaled(lambda ctx: mp.mpf(4) / 7), _ZETA3, singular=_AT_HALF_PI,
    ),
    IntegrandDescriptor(
        "COT_X", QuadTarget.ZETA3, "(4/7) int_0^{pi/2} x(pi-2x) cot x dx",
        "x(\\pi-2x) \\cot", _cot_times(lambda x: mp.pi - 2 * x),
        _scaled(lambda ctx: mp.mpf(4) / 7), _ZETA3,
    ),
    IntegrandDescriptor(
        "X2COT", QuadTarget.ZETA3, "(2/7)(pi^2 ln2 - 4 int_0^{pi/2} x^2 cot x dx)",
        "\\pi^2\\ln(2)-4\\int_{0}^{\\pi/2}x^2 \\cot", _cot_times(lambda x: x),
        lambda i, ctx: mp.mpf(2) / 7 * (_pi(ctx) ** 2 * _ln2(ctx) - 4 * i), _ZETA3,
    ),
    IntegrandDescriptor(
        "TAN_X", QuadTarget.ZETA3, "(4/7) int_0^{pi/2} x(pi-2x) tan x dx",
        "x(\\pi-2x)\\tan(x)",
        # (pi - 2x) tan x = 2 y cot y with y = pi/2 - x
        lambda x: 2 * x * xcot(mp.pi / 2 - x),
        _scaled(lambda ctx: mp.mpf(4) / 7), _ZETA3,
    ),
    IntegrandDescriptor(
        "LNCSCCOT", QuadTarget.ZETA3, "(2/7) int_0^{pi/2} (pi-2x) ln(csc x + cot x) dx",
        "(\\pi-2x)\\ln(\\csc( x)+\\cot(x))", lambda x: (mp.pi - 2 * x) * _ln_csc_cot(x),
        _scaled(lambda ctx: mp.mpf(2) / 7), _ZETA3, singular=_AT_ZERO,
    ),
    IntegrandDescriptor(
        "CATALAN_X", QuadTarget.ZETA3, "(4/7)(pi G - int_0^{pi/2} x ln(csc x + cot x) dx)",
        "\\pi G-\\int_{0}^{\\pi/2}x\\ln(\\csc(x)+\\cot(x))dx",
        lambda x: _times_log(x, _ln_csc_cot),
        lambda i, ctx: mp.mpf(4) / 7 * (_pi(ctx) * _catalan(ctx) - i), _ZETA3,
    ),
    IntegrandDescriptor(
        "ONEPLUSCOS_X", QuadTarget.ZETA3,
        "(16/21)(pi G - pi^2 ln2 / 8 - int_0^{pi/2} x ln(1 + cos x) dx)",
        "\\frac{16}{21}\\left(\\pi G", lambda x: x * mp.log1p(mp.cos(x)),
        lambda i, ctx: mp.mpf(16) / 21 * (
            _pi(ctx) * _catalan(ctx) - _pi(ctx) ** 2 * _ln2(ctx) / 8 - i
        ),
        _ZETA3,
    ),
    IntegrandDescriptor(
        "ONEPLUSCOS_LN", QuadTarget.ZETA3,
        "(8/21)(pi^2 ln2 / 4 - int_0^{pi/2} (2x-pi) ln(1 + cos x) dx)",
        "(2x-\\pi) \\ln(1+\\cos(x)))", lambda x: (2 * x - mp.pi) * mp.log1p(mp.cos(x)),
        lambda i, ctx: mp.mpf(8) / 21 * (_pi(ctx) ** 2 * _ln2(ctx) / 4 - i), _ZETA3,
    ),
    IntegrandDescriptor(
        "ONEPLUSCOS", QuadTarget.ZETA3,
        "(4/63)(pi^2 (pi + 3 ln2) / 2 + int_0^{pi/2} x^2 (2x-3pi) / (1 + cos x) dx)",
        "\\frac{1}{1+\\cos(x)}", lambda x: x * x * (2 * x - 3 * mp.pi) / (1 + mp.cos(x)),
        lambda i, ctx: mp.mpf(4) / 63 * (
            _pi(ctx) ** 2 * (_pi(ctx) + 3 * _ln2(ctx)) / 2 + i
        ),
        _ZETA3,
    ),
    IntegrandDescriptor(
        "LNCOS3", QuadTarget.ZETA3,
        "-(4/(3pi))(pi (ln2)^3 / 2 + pi^3 ln2 / 8 + int_0^{pi/2} (ln cos x)^3 dx)",
        "(\\ln(\\cos(x)))^3", lambda x: mp.log(mp.cos(x)) ** 3,
        lambda i, ctx: -4 / (3 * _pi(ctx)) * (
            _pi(ctx) * _ln2(ctx) ** 3 / 2 + _pi(ctx) ** 3 * _ln2(ctx) / 8 + i
        ),
        _ZETA3, singular=_AT_HALF_PI,
    ),
    _cot_variant(
        "COT_VAR_A", lambda ctx: 4 / _pi(ctx), lambda x: x * (mp.pi - 2 * x),
        "\\frac{4}{\\pi}\\int_{0}^{\\pi/2}x^2(\\pi-2x)",
    ),
    _cot_variant(
        "COT_VAR_B", lambda ctx: 4 / (5 * _pi(ctx)), lambda x: (mp.pi - 2 * x) ** 2,
        "\\frac{4}{5\\pi}\\int",
    ),
    _cot_variant(
        "COT_VAR_C", lambda ctx: 2 / _pi(ctx), lambda x: (2 * x - mp.pi) * (5 * x - mp.pi),
        "\\frac{2}{\\pi}\\int",
    ),
    _cot_variant(
        "COT_VAR_D", lambda ctx: 4 / (213 * _pi(ctx)),
        lambda x: (mp.pi - 2 * x) * (185 * x + 4 * mp.pi),
        "\\frac{4}{213\\pi}", weight=Weight.REDUCED,
    ),
    _cot_variant(
        "COT_VAR_E", lambda ctx: 4 / (1255 * _pi(ctx)),
        lambda x: (mp.pi - 2 * x) * (1311 * x - 8 * mp.pi),
        "\\frac{4}{1255\\pi}", weight=Weight.REDUCED,
    ),
    _cot_variant(
        "COT_VAR_F", lambda ctx: 4 / (3815325 * _pi(ctx) ** 3),
        lambda x: (mp.pi - 2 * x) * (
            8487800 * x ** 3 - 6023600 * mp.pi * x ** 2 + 4650613 * mp.pi ** 2 * x - 1984 * mp.pi ** 3
        ),
        "\\frac{4}{3815325\\pi^3}", weight=Weight.REDUCED, extra=8,
    ),
    IntegrandDescriptor(
        "Z5_COT", QuadTarget.ZETA5, "(4/93) int_0^{pi/2} x^2 (2x-pi)(4x-9pi) cot x dx",
        "\\zeta(5)&=\\frac{4}{93}",
        _cot_times(lambda x: x * (2 * x - mp.pi) * (4 * x - 9 * mp.pi)),
        _scaled(lambda ctx: mp.mpf(4) / 93), _ZETA5,
    ),
    IntegrandDescriptor(
        "Z5_COT_SHIFTED", QuadTarget.ZETA5,
        "zeta(3) + int_0^{pi/2} 4x(2x-pi)(x(4x-9pi)/93 + 1/7) cot x dx",
        "\\zeta(5)&=\\zeta(3)+\\int",
        _cot_times(lambda x: 4 * (2 * x - mp.pi) * (x * (4 * x - 9 * mp.pi) / 93 + mp.mpf(1) / 7)),
        lambda i, ctx: zeta_working(3, ctx) + i, _ZETA5,
    ),
    IntegrandDescriptor(
        "Z7_COT", QuadTarget.ZETA7,
        "-(8/5715) int_0^{pi/2} x^2 (2x-pi)(16x^3 - 16pi x^2 - 8pi^2 x + 27pi^3) cot x dx",
        "-\\frac{8}{5715}",
        _cot_times(lambda x: x * (2 * x - mp.pi) * (
            16 * x ** 3 - 16 * mp.pi * x ** 2 - 8 * mp.pi ** 2 * x + 27 * mp.pi ** 3
        )),
        _scaled(lambda ctx: mp.mpf(-8) / 5715), _ZETA7, extra_digits=4,
    ),
    IntegrandDescriptor(
        "LEMMA_LNSIN", QuadTarget.CLOSED_FORM, "int_0^{pi/2} ln(sin x) dx = -(pi/2) ln 2",
        "=-\\frac{1}{2}\\pi\\ln(2)", lambda x: mp.log(mp.sin(x)), _scaled(lambda ctx: mp.mp.one),
        lambda ctx: -_pi(ctx) * _ln2(ctx) / 2, singular=_AT_ZERO,
    ),
    IntegrandDescriptor(
        "LEMMA_CATALAN", QuadTarget.CLOSED_FORM, "int_0^{pi/2} ln(csc x + cot x) dx = 2G",
        "where $G$ is Catalan's constant", _ln_csc_cot, _scaled(lambda ctx: mp.mp.one),
        lambda ctx: 2 * _catalan(ctx), singular=_AT_ZERO,
    ),
    IntegrandDescriptor(
        "LEMMA_ONEPLUSCOS", QuadTarget.CLOSED_FORM,
        "int_0^{pi/2} ln(1 + cos x) dx = 2G - (pi/2) ln 2",
        "2G-\\frac{1}{2}\\pi\\ln(2)", lambda x: mp.log1p(mp.cos(x)), _scaled(lambda ctx: mp.mp.one),
        lambda ctx: 2 * _catalan(ctx) - _pi(ctx) * _ln2(ctx) / 2,
    ),
    IntegrandDescriptor(
        "LEMMA_XCOT", QuadTarget.CLOSED_FORM, "int_0^{pi/2} 2 pi x cot x dx = pi^2 ln 2",
        "\\int_{0}^{\\pi/2}2\\pi x \\cot", lambda x: 2 * mp.pi * xcot(x),
        _scaled(lambda ctx: mp.mp.one), lambda ctx: _pi(ctx) ** 2 * _ln2(ctx),
    ),
    IntegrandDescriptor(
        "LEMMA_LNSINCOS", QuadTarget.CLOSED_FORM,
        "-int_0^{pi/2} 4x ln(sin x cos x) dx = pi^2 ln 2",
        "-\\int_{0}^{\\pi/2}4 x \\ln(\\sin(x)\\cos(x))",
        lambda x: _times_log(x, lambda t: -4 * mp.log(mp.sin(t) * mp.cos(t))),
        _scaled(lambda ctx: mp.mp.one), lambda ctx: _pi(ctx) ** 2 * _ln2(ctx), singular=_AT_HALF_PI,
    ),
)

INTEGRANDS: dict[str, IntegrandDescriptor] = {d.id: d for d in _DESCRIPTORS}


def get_integrand(integrand_id: str) -> IntegrandDescriptor:
    """Look up an integrand by id.

    Raises:
        UnknownFormulaError: If *integrand_id* is not registered.
    """
    try:
        return INTEGRANDS[integrand_id]
    except KeyError:
        supported = ", ".join(INTEGRANDS)
        raise UnknownFormulaError(f"Unknown integrand '{integrand_id}'. Supported: {supported}")


def list_integrands() -> list[IntegrandDescriptor]:
    return list(INTEGRANDS.values())


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def integrand_value(integrand_id: str, x, ctx: PrecisionContext) -> mp.mpf:
    """The integrand (no prefactor) at x.

    Raises:
        DomainError: If x lies outside the interval or on a logarithmic
            singularity.
    """
    descriptor = get_integrand(integrand_id)
    with ctx.workdps():
        x = mp.mpf(x)
        lo, hi = descriptor.interval()
        slack = ctx.tolerance(-ctx.guard)
        if x < lo - slack or x > hi + slack:
            raise DomainError(f"x = {mp.nstr(x, 10)} is outside the interval of {integrand_id}.")
        for point in descriptor.singular:
            if abs(x - to_mpf(point) * mp.pi) <= slack:
                raise DomainError(f"{integrand_id} is singular at x = {point}*pi.")
        x = min(max(x, lo), hi)
        value = descriptor.integrand(x)
    return ctx.round(value)


@dataclass(frozen=True)
class QuadratureEstimate:
    """Raw integral and its error estimate, summed over subintervals."""

    integral: mp.mpf
    error: mp.mpf
    levels: int


def raw_integral(descriptor: IntegrandDescriptor, levels: int) -> QuadratureEstimate:
    """tanh-sinh on each subinterval at the current precision."""
    nodes = [to_mpf(p) * mp.pi for p in descriptor.points]
    total, error = mp.mp.zero, mp.mp.zero
    for a, b in zip(nodes, nodes[1:]):
        value, err = mp.quad(
            descriptor.integrand, [a, b], method="tanh-sinh", maxdegree=levels, error=True
        )
        total += value
        error += err
    return QuadratureEstimate(total, error, levels)


def integrate(
    integrand_id: str, spec: QuadratureSpec, ctx: PrecisionContext
) -> EvaluationResult:
    """prefactor x integral over the stored interval, scored against its reference.

    ``tail_estimate`` of the result carries the quadrature error estimate and
    ``terms`` the level count.

    Raises:
        UnknownFormulaError: If the id is not registered.
        AccuracyError: If the error estimate misses ``spec.target_digits``;
            the best value and the estimate are attached.
    """
    descriptor = get_integrand(integrand_id)
    target = spec.target_digits or ctx.digits
    work = ctx.elevated(descriptor.extra_digits)

    start = time.perf_counter()
    with work.workdps():
        raw = raw_integral(descriptor, spec.levels)
        value = descriptor.combine(raw.integral, work)
        error_estimate = abs(descriptor.combine(raw.integral + raw.error, work) - value)
        logger.debug(
            "%s: levels=%d, raw error %s, mapped error %s",
            integrand_id, spec.levels, mp.nstr(raw.error, 3), mp.nstr(error_estimate, 3),
        )
        if error_estimate > mp.mpf(10) ** (-target) * max(1, abs(value)):
            raise AccuracyError(
                f"{integrand_id} did not reach {target} digits with {spec.levels} levels "
                f"(estimated error {mp.nstr(error_estimate, 3)}).",
                best_value=ctx.round(value),
                error_estimate=ctx.round(error_estimate),
            )
        reference = descriptor.reference(work)
        error = value - reference
    elapsed = time.perf_counter() - start

    return EvaluationResult(
        formula_id=integrand_id,
        params={},
        value=ctx.round(value),
        terms=spec.levels,
        digits_requested=ctx.digits,
        abs_error_vs_ref=ctx.round(error),
        elapsed_seconds=elapsed,
        working_digits=work.working_digits,
        tail_estimate=ctx.round(error_estimate),
    )


def convergence_profile(
    integrand_id: str, levels: list[int], ctx: PrecisionContext
) -> list[QuadratureEstimate]:
    """Raw estimates at several level counts, without the accuracy check."""
    descriptor = get_integrand(integrand_id)
    work = ctx.elevated(descriptor.extra_digits)
    with work.workdps():
        return [raw_integral(descriptor, level) for level in levels]
