"""
Tests for the Continued Roots Module
====================================

Periodic nested radicals, elementary and limit functions, the S(x) and
A_n(x) families, their functional equations and the Sigma expansion.
"""

import mpmath as mp
import pytest

from zeta_forge.continued_roots import (
    A_family,
    A_tilde_family,
    Branch,
    FamilyParams,
    FunctionalIdentity,
    RootPattern,
    S_of_x,
    continued_root_value,
    elementary_function,
    elementary_function_angle,
    functional_equation_residual,
    limit_function,
    period_polynomial,
    sigma_coeff,
    sigma_expansion,
    sigma_function,
)
from zeta_forge.dynamic_sums import SignSequence, elementary_value, seq_of_angle
from zeta_forge.exceptions import DomainError
from zeta_forge.precision import PrecisionContext, zeta_ref


def _half_sqrt2(ctx: PrecisionContext) -> mp.mpf:
    with ctx.workdps():
        return mp.sqrt(2) / 2


# ---------------------------------------------------------------------------
# Continued roots
# ---------------------------------------------------------------------------


class TestContinuedRoots:
    """Periodic patterns solved through their period polynomial."""

    @pytest.mark.parametrize(
        "text, expected",
        [("|+", mp.mpf(2)), ("|-", mp.mpf(1)), ("+", mp.mpf(2)), ("-|+", mp.mpf(0))],
    )
    def test_simple_values(self, ctx30: PrecisionContext, text: str, expected) -> None:
        assert abs(continued_root_value(RootPattern.parse(text), ctx30) - expected) < ctx30.tolerance(2)

    def test_sqrt3(self, ctx30: PrecisionContext) -> None:
        with mp.workdps(50):
            expected = mp.sqrt(3)
            assert abs(continued_root_value(RootPattern.parse("+|-"), ctx30) - expected) < mp.mpf(10) ** -28

    @pytest.mark.parametrize("text", ["|+-", "|--+", "+-|-+", "|++-"])
    def test_agrees_with_iteration(self, ctx30: PrecisionContext, text: str) -> None:
        pattern = RootPattern.parse(text)
        with mp.workdps(60):
            y = mp.mpf(1)
            for _ in range(200):
                for sign in reversed(pattern.period):
                    y = mp.sqrt(2 + sign * y)
            for sign in reversed(pattern.prefix.signs):
                y = mp.sqrt(2 + sign * y)
            assert abs(continued_root_value(pattern, ctx30) - y) < mp.mpf(10) ** -27

    def test_period_polynomial(self) -> None:
        # y = y^2 - 2 for a single '+'
        assert period_polynomial((1,)) == [-2, -1, 1]
        assert period_polynomial((-1,)) == [2, -1, -1]

    def test_pattern_string(self) -> None:
        assert str(RootPattern.parse("+|-")) == "+|-"
        assert RootPattern.parse("-+").period == (1,)

    def test_long_period_rejected(self, ctx30: PrecisionContext) -> None:
        with pytest.raises(DomainError):
            continued_root_value(RootPattern.parse("|+-+-+-+"), ctx30)


# ---------------------------------------------------------------------------
# Elementary and limit functions
# ---------------------------------------------------------------------------


class TestElementaryFunctions:
    """Nested radicals with a variable innermost term."""

    def test_minus_plus_at_center(self, ctx30: PrecisionContext) -> None:
        value = elementary_function(SignSequence.parse("(- +)"), _half_sqrt2(ctx30), ctx30)
        with mp.workdps(50):
            assert abs(value - 2 * mp.sin(mp.pi / 16)) < mp.mpf(10) ** -28

    def test_minus_minus_at_zero(self, ctx30: PrecisionContext) -> None:
        value = elementary_function(SignSequence.parse("(- -)"), 0, ctx30)
        with mp.workdps(50):
            assert abs(value - 2 * mp.sin(mp.pi / 8)) < mp.mpf(10) ** -28

    def test_plus_plus_at_one(self, ctx30: PrecisionContext) -> None:
        assert abs(elementary_function(SignSequence.parse("(+ +)"), 1, ctx30) - 2) < ctx30.tolerance()

    @pytest.mark.parametrize("n", range(3, 8))
    def test_correspondence(self, ctx30: PrecisionContext, n: int) -> None:
        x = _half_sqrt2(ctx30)
        for i in range(1, 2 ** (n - 1) + 1, 2):
            seq = seq_of_angle(i, n)
            assert abs(elementary_function(seq, x, ctx30) - elementary_value(seq, ctx30)) < ctx30.tolerance(2)

    @pytest.mark.parametrize("x", ["0.3", "-0.7", "0.95"])
    def test_angle_form(self, ctx30: PrecisionContext, x: str) -> None:
        seq = SignSequence.parse("(+ - +)")
        value = elementary_function(seq, mp.mpf(x), ctx30)
        theta = elementary_function_angle(seq, mp.mpf(x), ctx30)
        with ctx30.workdps():
            assert abs(value - 2 * mp.sin(theta)) < ctx30.tolerance(2)

    def test_domain(self, ctx30: PrecisionContext) -> None:
        with pytest.raises(DomainError):
            elementary_function(SignSequence.parse("(+)"), 1.5, ctx30)
        with pytest.raises(DomainError):
            elementary_function(SignSequence.parse("()"), 0, ctx30)


class TestLimitFunction:
    """Closed-form limits of the elementary functions."""

    @pytest.mark.parametrize(
        "i, branch, cube",
        [(1, Branch.MINUS, 1), (1, Branch.PLUS, 3), (2, Branch.MINUS, 5), (2, "plus", 7)],
    )
    def test_table_values(self, ctx30: PrecisionContext, i: int, branch, cube: int) -> None:
        value = limit_function(i, branch, _half_sqrt2(ctx30), ctx30)
        with mp.workdps(50):
            assert abs(value - 1 / (cube * mp.pi) ** 3) < mp.mpf(10) ** -31

    def test_bad_index(self, ctx30: PrecisionContext) -> None:
        with pytest.raises(DomainError):
            limit_function(0, Branch.PLUS, 0, ctx30)


# ---------------------------------------------------------------------------
# Families
# ---------------------------------------------------------------------------


class TestSFamily:
    """S(x) and its functional equations."""

    def test_single_term_at_zero(self, ctx30: PrecisionContext) -> None:
        with mp.workdps(50):
            assert abs(S_of_x(0, 1, ctx30).value - 1 / (4 * mp.pi ** 3)) < mp.mpf(10) ** -31

    def test_center_limit(self, ctx30: PrecisionContext) -> None:
        estimate = S_of_x(_half_sqrt2(ctx30), 2000, ctx30)
        with mp.workdps(50):
            limit = 7 * zeta_ref(3, ctx30) / (8 * mp.pi ** 3)
            gap = limit - estimate.value
            assert -mp.mpf(10) ** -28 < gap <= estimate.tail_bound + mp.mpf(10) ** -28
        assert estimate.tail_bound < mp.mpf("1e-7")

    def test_zero_limit(self, ctx30: PrecisionContext) -> None:
        estimate = S_of_x(0, 2000, ctx30)
        with mp.workdps(50):
            limit = 7 * zeta_ref(3, ctx30) / (32 * mp.pi ** 3)
            assert abs(limit - estimate.value) <= estimate.tail_bound + mp.mpf(10) ** -28

    def test_halving_residual(self, ctx30: PrecisionContext) -> None:
        assert functional_equation_residual("0.3", 200, ctx30) < mp.mpf("1e-8")

    def test_halving_at_zero(self, ctx30: PrecisionContext) -> None:
        assert functional_equation_residual(0, 200, ctx30, FunctionalIdentity.HALVING) < mp.mpf("1e-8")

    def test_doubling_bounded(self, ctx30: PrecisionContext) -> None:
        residual_near = functional_equation_residual("0.3", 400, ctx30, "doubling")
        assert residual_near < mp.mpf("1e-5")

    def test_doubling_singular(self, ctx30: PrecisionContext) -> None:
        with pytest.raises(DomainError):
            functional_equation_residual(0, 10, ctx30, FunctionalIdentity.DOUBLING)

    def test_params_validation(self) -> None:
        with pytest.raises(DomainError):
            FamilyParams(1, mp.mpf("0.5"), 10)
        with pytest.raises(DomainError):
            FamilyParams(3, mp.mpf("0.5"), 0)
        with pytest.raises(DomainError):
            FamilyParams(3, mp.mpf(1), 10)


class TestAFamily:
    """A_n and A-tilde_n equal zeta(n) at sqrt(2)/2 in the limit."""

    @pytest.mark.parametrize("n", [2, 3, 5])
    def test_a_family(self, ctx30: PrecisionContext, n: int) -> None:
        estimate = A_family(n, _half_sqrt2(ctx30), 500, ctx30)
        gap = zeta_ref(n, ctx30) - estimate.value
        assert -ctx30.tolerance(3) < gap <= estimate.tail_bound + ctx30.tolerance(3)

    def test_a_family_error_shrinks(self, ctx30: PrecisionContext) -> None:
        x = _half_sqrt2(ctx30)
        target = zeta_ref(3, ctx30)
        errors = [abs(target - A_family(3, x, t, ctx30).value) for t in (10, 100, 1000)]
        assert errors[1] < errors[0] / 50
        assert errors[2] < errors[1] / 50

    def test_a_tilde_zeta4(self, ctx30: PrecisionContext) -> None:
        estimate = A_tilde_family(4, _half_sqrt2(ctx30), 500, ctx30)
        gap = zeta_ref(4, ctx30) - estimate.value
        assert -ctx30.tolerance(3) < gap <= estimate.tail_bound + ctx30.tolerance(3)


# ---------------------------------------------------------------------------
# Sigma expansion
# ---------------------------------------------------------------------------


class TestSigmaExpansion:
    """Closed-form coefficients and the truncated series."""

    @pytest.mark.parametrize(
        "n, i, k, pi_power, arcsin_power",
        [(3, 1, 48, 5, 2), (3, 2, 480, 7, 4), (5, 1, 120, 7, 2), (3, 0, 2, 3, 0)],
    )
    def test_coefficients(self, n: int, i: int, k: int, pi_power: int, arcsin_power: int) -> None:
        coeff = sigma_coeff(n, i)
        assert (coeff.k, coeff.pi_power, coeff.arcsin_power) == (k, pi_power, arcsin_power)

    @pytest.mark.parametrize("n, i", [(4, 1), (1, 0), (3, -1)])
    def test_invalid(self, n: int, i: int) -> None:
        with pytest.raises(DomainError):
            sigma_coeff(n, i)

    @pytest.mark.parametrize("n, x", [(3, "0.2"), (3, "-0.5"), (5, "0.4")])
    def test_expansion_matches_hurwitz(self, ctx30: PrecisionContext, n: int, x: str) -> None:
        value = sigma_expansion(n, mp.mpf(x), 60, ctx30)
        with mp.workdps(50):
            c = 2 * mp.asin(mp.mpf(x))
            two_pi = 2 * mp.pi
            exact = (mp.zeta(n, (mp.pi - c) / two_pi) + mp.zeta(n, (mp.pi + c) / two_pi)) / two_pi ** n
            assert abs(value - exact) < mp.mpf(10) ** -20

    def test_partial_sum_within_tail(self, ctx30: PrecisionContext) -> None:
        estimate = sigma_function(3, mp.mpf("0.2"), 300, ctx30)
        full = sigma_expansion(3, mp.mpf("0.2"), 60, ctx30)
        assert 0 <= full - estimate.value <= estimate.tail_bound + ctx30.tolerance(3)
