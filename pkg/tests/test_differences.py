"""
Tests for the Difference Transforms Module
==========================================

Finite differences and their closed forms, binomial accelerations of zeta
and eta, the Stirling identity, mod-1 sums and step sequences.
"""

from fractions import Fraction

import mpmath as mp
import pytest

from zeta_forge.differences import (
    DifferenceSpec,
    Direction,
    PowerDirection,
    StepKind,
    StepSequence,
    bigenergy_mod1,
    binomial_accel,
    delta_ln,
    delta_sin_closed_form,
    eta_binomial_accel,
    family_accel,
    mod1_sum,
    nabla_exp_closed_form,
    nth_difference,
    nth_difference_exact,
    power_identity_check,
    simple_pole_experiment,
    step_sequence_accel,
    stirling2,
    stirling_difference_identity,
    zeta_binomial_accel,
    zeta_function,
    zeta_log_shift_accel,
    zeta_product_accel,
)
from zeta_forge.evaluation import evaluate
from zeta_forge.exceptions import DomainError, InvalidParameterError
from zeta_forge.precision import PrecisionContext, make_context, zeta_ref

# ---------------------------------------------------------------------------
# Difference operators
# ---------------------------------------------------------------------------


class TestDifferenceSpec:
    """Validation and node weights."""

    def test_step_coerced(self) -> None:
        assert DifferenceSpec("forward", 2, "1/2").step == Fraction(1, 2)
        assert DifferenceSpec(Direction.BACKWARD, 2).direction is Direction.BACKWARD

    @pytest.mark.parametrize("order, step", [(-1, 1), (10001, 1), (2, 0), (2, "-1/3")])
    def test_invalid(self, order: int, step) -> None:
        with pytest.raises(InvalidParameterError):
            DifferenceSpec(Direction.FORWARD, order, step)

    def test_forward_weights(self) -> None:
        assert DifferenceSpec(Direction.FORWARD, 3).nodes() == [(-1, 0), (3, 1), (-3, 2), (1, 3)]

    def test_backward_weights(self) -> None:
        assert DifferenceSpec(Direction.BACKWARD, 2).nodes() == [(1, 0), (-2, 1), (1, 2)]


class TestExactDifferences:
    """The rational path on polynomials."""

    def test_cube_third_difference(self) -> None:
        spec = DifferenceSpec(Direction.FORWARD, 3)
        assert nth_difference_exact(lambda x: x ** 3, 5, spec) == 6

    def test_order_above_degree(self) -> None:
        spec = DifferenceSpec(Direction.FORWARD, 4, Fraction(1, 3))
        assert nth_difference_exact(lambda x: x ** 3 - 2 * x, Fraction(7, 2), spec) == 0

    def test_backward(self) -> None:
        spec = DifferenceSpec(Direction.BACKWARD, 1)
        assert nth_difference_exact(lambda x: x * x, 3, spec) == 5

    def test_half_step(self) -> None:
        spec = DifferenceSpec(Direction.FORWARD, 2, Fraction(1, 2))
        # h^2 * 2 for x^2
        assert nth_difference_exact(lambda x: x * x, 1, spec) == Fraction(1, 2)


class TestClosedForms:
    """Numeric differences against their closed forms."""

    @pytest.mark.parametrize("n", [1, 2, 5, 8])
    def test_delta_sin(self, ctx30: PrecisionContext, n: int) -> None:
        spec = DifferenceSpec(Direction.FORWARD, n, Fraction(1, 2))
        numeric = nth_difference(mp.sin, "3/10", spec, ctx30)
        closed = delta_sin_closed_form("3/10", n, "1/2", ctx30)
        assert abs(numeric - closed) < ctx30.tolerance(2)

    @pytest.mark.parametrize("n", [1, 3, 6])
    def test_nabla_exp(self, ctx30: PrecisionContext, n: int) -> None:
        spec = DifferenceSpec(Direction.BACKWARD, n, Fraction(1, 4))
        numeric = nth_difference(mp.exp, 1, spec, ctx30)
        closed = nabla_exp_closed_form(1, n, "1/4", ctx30)
        assert abs(numeric - closed) < ctx30.tolerance(2)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_delta_ln(self, ctx30: PrecisionContext, n: int) -> None:
        spec = DifferenceSpec(Direction.FORWARD, n)
        numeric = nth_difference(mp.log, 2, spec, ctx30)
        assert abs(delta_ln(2, n, ctx30) - numeric) < mp.mpf("1e-20")

    def test_delta_ln_first(self, ctx30: PrecisionContext) -> None:
        with mp.workdps(50):
            assert abs(delta_ln(2, 1, ctx30) - mp.log(mp.mpf(3) / 2)) < mp.mpf("1e-20")

    def test_delta_ln_domain(self, ctx30: PrecisionContext) -> None:
        with pytest.raises(DomainError):
            delta_ln(0, 2, ctx30)
        with pytest.raises(DomainError):
            delta_ln(2, 0, ctx30)


# ---------------------------------------------------------------------------
# Binomial accelerations
# ---------------------------------------------------------------------------


class TestBinomialAccel:
    """Alternating binomial sums of shifted values."""

    @pytest.mark.parametrize("n", [1, 4, 7])
    def test_residual_is_difference(self, ctx30: PrecisionContext, n: int) -> None:
        accel = binomial_accel(mp.exp, "1/2", "1/4", n, ctx30)
        residual = nth_difference(mp.exp, "1/2", DifferenceSpec(Direction.FORWARD, n, "1/4"), ctx30)
        with mp.workdps(50):
            expected = mp.exp(mp.mpf(1) / 2) + (-1) ** (n + 1) * residual
            assert abs(accel - expected) < ctx30.tolerance(3)

    @pytest.mark.parametrize("k, h, n, tolerance", [(3, 1, 50, "1e-3"), (3, 2, 50, "0.02"), (3, "1/2", 50, "1e-4"), (2, 1, 30, "0.05")])
    def test_zeta(self, ctx30: PrecisionContext, k, h, n: int, tolerance: str) -> None:
        assert abs(zeta_binomial_accel(k, h, n, ctx30) - zeta_ref(k, ctx30)) < mp.mpf(tolerance)

    def test_zeta_error_shrinks(self, ctx30: PrecisionContext) -> None:
        target = zeta_ref(3, ctx30)
        coarse = abs(zeta_binomial_accel(3, "1/2", 10, ctx30) - target)
        fine = abs(zeta_binomial_accel(3, "1/2", 50, ctx30) - target)
        assert fine < coarse

    def test_eta_matches_family(self, ctx30: PrecisionContext) -> None:
        direct = eta_binomial_accel(2, 1, 20, ctx30)
        assert abs(family_accel(2, 0, 1, 1, 20, ctx30) - direct) < ctx30.tolerance(3)

    @pytest.mark.parametrize("k", [1, "1/2"])
    def test_zeta_domain(self, ctx30: PrecisionContext, k) -> None:
        with pytest.raises(DomainError):
            zeta_binomial_accel(k, 1, 10, ctx30)

    def test_eta_domain(self, ctx30: PrecisionContext) -> None:
        with pytest.raises(DomainError):
            eta_binomial_accel(0, 1, 10, ctx30)
        with pytest.raises(DomainError):
            eta_binomial_accel(2, 0, 10, ctx30)

    def test_order_limits(self, ctx30: PrecisionContext) -> None:
        with pytest.raises(InvalidParameterError):
            zeta_binomial_accel(3, 1, 0, ctx30)

    def test_log_shift(self, ctx30: PrecisionContext) -> None:
        assert abs(zeta_log_shift_accel(2, "1/16", 50, ctx30) - zeta_ref(2, ctx30)) < mp.mpf("1e-20")

    def test_log_shift_zeta3(self, ctx30: PrecisionContext) -> None:
        assert abs(zeta_log_shift_accel(3, "1/16", 100, ctx30) - zeta_ref(3, ctx30)) < mp.mpf("1e-25")

    def test_log_shift_zeta3_high_precision(self) -> None:
        ctx = make_context(150)
        value = zeta_log_shift_accel(3, "1/16", 100, ctx)
        with ctx.workdps():
            assert abs(value - zeta_ref(3, ctx)) < mp.mpf("1e-90")

    @pytest.mark.parametrize("k", [3, 4])
    def test_product(self, ctx30: PrecisionContext, k: int) -> None:
        assert abs(zeta_product_accel(k, 1, 40, ctx30) - zeta_ref(k, ctx30)) < mp.mpf("1e-3")

    def test_product_first_order(self, ctx30: PrecisionContext) -> None:
        assert abs(zeta_product_accel(3, 1, 1, ctx30) - zeta_ref(4, ctx30)) < ctx30.tolerance(2)

    def test_family_domain(self, ctx30: PrecisionContext) -> None:
        with pytest.raises(DomainError):
            family_accel(2, 1, 0, 1, 5, ctx30)

    def test_simple_pole_domain(self, ctx30: PrecisionContext) -> None:
        with pytest.raises(InvalidParameterError):
            simple_pole_experiment(3, 1, ctx30)
        with pytest.raises(DomainError):
            simple_pole_experiment(1, 5, ctx30)


# ---------------------------------------------------------------------------
# Powers, Stirling numbers and mod-1 sums
# ---------------------------------------------------------------------------


class TestPowerIdentity:
    """sum (-1)^(j+1) C(n, j) x^(1 -+ j) in closed form."""

    def test_descending(self, ctx30: PrecisionContext) -> None:
        value = power_identity_check(3, 30, PowerDirection.DESCENDING, ctx30)
        with mp.workdps(50):
            expected = 3 * (1 - (mp.mpf(2) / 3) ** 30)
            assert abs(value - expected) < ctx30.tolerance(3)

    @pytest.mark.parametrize("n, expected", [(10, 0), (11, 4), (20, 0), (21, 4)])
    def test_ascending_at_two(self, ctx30: PrecisionContext, n: int, expected: int) -> None:
        assert abs(power_identity_check(2, n, "1+j", ctx30) - expected) < ctx30.tolerance(3)

    def test_ascending_converges(self, ctx30: PrecisionContext) -> None:
        assert abs(power_identity_check("1/2", 40, PowerDirection.ASCENDING, ctx30) - mp.mpf(1) / 2) < mp.mpf("1e-12")

    def test_zero(self, ctx30: PrecisionContext) -> None:
        with pytest.raises(DomainError):
            power_identity_check(0, 3, "1-j", ctx30)


class TestStirlingIdentity:
    """The identity holds as exact polynomials."""

    @pytest.mark.parametrize("a, b, expected", [(4, 2, 7), (5, 2, 15), (5, 3, 25), (3, 0, 0), (0, 0, 1), (2, 3, 0)])
    def test_stirling2(self, a: int, b: int, expected: int) -> None:
        assert stirling2(a, b) == expected

    def test_holds(self) -> None:
        for n in range(1, 9):
            for k in range(0, 13):
                assert stirling_difference_identity(n, k).holds

    def test_correction(self) -> None:
        check = stirling_difference_identity(2, 4)
        assert check.correction == (-14, -24, -12, 0, 0)
        assert check.rhs == (-14, -24, -12, 0, 1)

    def test_below_order(self) -> None:
        assert stirling_difference_identity(5, 3).correction == (0, 0, 0, 0)

    def test_at_order(self) -> None:
        assert stirling_difference_identity(3, 3).correction == (6, 0, 0, 0)

    def test_to_dict(self) -> None:
        payload = stirling_difference_identity(1, 2).to_dict()
        assert payload["holds"] is True
        assert payload["lhs"] == payload["rhs"]

    def test_domain(self) -> None:
        with pytest.raises(DomainError):
            stirling_difference_identity(0, 2)


class TestMod1Sum:
    """Fractional-part accumulation."""

    def test_positive_terms(self, ctx30: PrecisionContext) -> None:
        assert mod1_sum(lambda j: j + mp.mpf(1) / 4, 3, ctx30) == mp.mpf(3) / 4

    def test_negative_terms(self, ctx30: PrecisionContext) -> None:
        assert mod1_sum(lambda j: -mp.mpf(1) / 4, 3, ctx30) == mp.mpf(1) / 4

    def test_empty(self, ctx30: PrecisionContext) -> None:
        assert mod1_sum(lambda j: mp.mpf(j), 0, ctx30) == 0

    def test_bigenergy(self, ctx30: PrecisionContext) -> None:
        value = bigenergy_mod1(60, ctx30)
        assert abs(value - zeta_ref(3, ctx30)) < mp.mpf("0.25")
        direct = evaluate("Z3_BIGENERGY", {}, 60, ctx30).value
        with mp.workdps(40):
            assert abs(value - (1 + mp.frac(direct))) < mp.mpf("1e-20")

    def test_bigenergy_domain(self, ctx30: PrecisionContext) -> None:
        with pytest.raises(DomainError):
            bigenergy_mod1(5, ctx30)


# ---------------------------------------------------------------------------
# Step sequences
# ---------------------------------------------------------------------------


class TestStepSequence:
    """Parsing and offsets."""

    def test_parse(self) -> None:
        seq = StepSequence.parse("inverse_power:2")
        assert seq == StepSequence.inverse_power(2)
        assert str(seq) == "inverse_power:2"
        assert StepSequence.parse("logistic").kind is StepKind.LOGISTIC

    @pytest.mark.parametrize("text", ["inverse_power", "inverse_power:1", "logistic:3", "spiral", "inverse_power:x"])
    def test_parse_invalid(self, text: str) -> None:
        with pytest.raises(InvalidParameterError):
            StepSequence.parse(text)

    def test_geometric_offsets(self) -> None:
        with mp.workdps(30):
            offsets = StepSequence(StepKind.GEOMETRIC_HALF).offsets(3)
            assert offsets == [mp.mpf("0.5"), mp.mpf("0.75"), mp.mpf("0.875")]

    def test_logistic_offsets(self) -> None:
        with mp.workdps(30):
            first = StepSequence(StepKind.LOGISTIC).offsets(1)[0]
            assert abs(first - 1 / (1 + mp.exp(-1))) < mp.mpf("1e-28")

    @pytest.mark.parametrize(
        "seq, tolerance",
        [
            (StepSequence(StepKind.GEOMETRIC_HALF), "5e-3"),
            (StepSequence(StepKind.EXP_DECAY), "5e-3"),
            (StepSequence.inverse_power(2), "0.05"),
        ],
    )
    def test_accel_towards_zeta3(self, ctx30: PrecisionContext, seq: StepSequence, tolerance: str) -> None:
        value = step_sequence_accel(zeta_function, 3, 1, seq, 60, ctx30)
        assert abs(value - zeta_ref(3, ctx30)) < mp.mpf(tolerance)

