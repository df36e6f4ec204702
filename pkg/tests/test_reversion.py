"""
Tests for the Reversion Module
==============================

Truncated power series arithmetic, the two reversion methods and pi as a
series in zeta(3).
"""

import mpmath as mp
import pytest

from zeta_forge.exceptions import DomainError, InvalidParameterError
from zeta_forge.precision import PrecisionContext, zeta_ref
from zeta_forge.reversion import (
    PowerSeries,
    ReversionMethod,
    centered_series,
    pi_from_zeta3,
    pi_from_zeta3_centered,
    closed_form_coefficients,
    revert_checked,
    revert_series,
    zeta3_generating_series,
)

CATALAN_SIGNED = [0, 1, -1, 2, -5, 14]


def _close(a, b, tol: str = "1e-12") -> bool:
    return abs(a - b) < mp.mpf(tol)


# ---------------------------------------------------------------------------
# Power series
# ---------------------------------------------------------------------------


class TestPowerSeries:
    """Arithmetic on truncated series."""

    def test_from_list_pads(self) -> None:
        series = PowerSeries.from_list([1, 2], 4)
        assert series.order == 4
        assert series.coefficients[2:] == (0, 0, 0)
        assert series[9] == 0

    def test_from_list_truncates(self) -> None:
        assert PowerSeries.from_list([1, 2, 3, 4], 1).coefficients == (1, 2)

    def test_multiply_and_power(self) -> None:
        one_plus_x = PowerSeries.from_list([1, 1], 4)
        assert (one_plus_x ** 3).coefficients == (1, 3, 3, 1, 0)
        assert (one_plus_x * one_plus_x).coefficients == (1, 2, 1, 0, 0)

    def test_scalar_arithmetic(self) -> None:
        series = PowerSeries.from_list([1, 2, 3], 2)
        assert (series + 1).coefficients == (2, 2, 3)
        assert (2 * series).coefficients == (2, 4, 6)
        assert (series - series).coefficients == (0, 0, 0)

    def test_reciprocal(self) -> None:
        geometric = PowerSeries.from_list([1, -1], 5).reciprocal()
        assert geometric.coefficients == (1, 1, 1, 1, 1, 1)

    def test_reciprocal_zero(self) -> None:
        with pytest.raises(DomainError):
            PowerSeries.identity(3).reciprocal()

    def test_derivative(self) -> None:
        assert PowerSeries.from_list([5, 1, 1, 1], 3).derivative().coefficients == (1, 2, 3)

    def test_compose(self) -> None:
        square = PowerSeries.from_list([0, 0, 1], 4)
        one_plus_x = PowerSeries.from_list([0, 1, 1], 4)
        assert square.compose(one_plus_x).coefficients == (0, 0, 1, 2, 1)

    def test_compose_center_mismatch(self) -> None:
        with pytest.raises(DomainError):
            PowerSeries.identity(3).compose(PowerSeries.from_list([1, 1], 3))

    def test_different_centers(self) -> None:
        with pytest.raises(DomainError):
            PowerSeries.identity(2) + PowerSeries.from_list([0, 1], 2, center=1)

    def test_negative_power(self) -> None:
        with pytest.raises(DomainError):
            PowerSeries.identity(2) ** -1

    def test_call(self) -> None:
        series = PowerSeries.from_list([1, 2, 3], 2, center=1)
        assert series(3) == 1 + 2 * 2 + 3 * 4

    def test_to_dict(self, ctx20: PrecisionContext) -> None:
        payload = PowerSeries.from_list([1, 2], 1).to_dict(ctx20)
        assert payload["order"] == 1
        assert payload["coefficients"] == ["1.0", "2.0"]


# ---------------------------------------------------------------------------
# Reversion
# ---------------------------------------------------------------------------


class TestRevertSeries:
    """Lagrange and Newton reversion."""

    @pytest.mark.parametrize("method", list(ReversionMethod))
    def test_catalan(self, method: ReversionMethod) -> None:
        reverted = revert_series(PowerSeries.from_list([0, 1, 1], 5), 5, method)
        assert all(_close(a, b) for a, b in zip(reverted.coefficients, CATALAN_SIGNED))

    def test_methods_agree_on_sine(self) -> None:
        with mp.workdps(40):
            sine = PowerSeries.from_list(
                [0 if k % 2 == 0 else (-1) ** (k // 2) / mp.factorial(k) for k in range(12)], 11
            )
            lagrange = revert_series(sine, 11, "lagrange")
            newton = revert_series(sine, 11, "newton")
            asin = [0, 1, 0, mp.mpf(1) / 6, 0, mp.mpf(3) / 40, 0, mp.mpf(5) / 112, 0, mp.mpf(35) / 1152, 0, mp.mpf(63) / 2816]
            for a, b, c in zip(lagrange.coefficients, newton.coefficients, asin):
                assert abs(a - c) < mp.mpf("1e-30")
                assert abs(b - c) < mp.mpf("1e-30")

    def test_round_trip(self) -> None:
        with mp.workdps(40):
            f = PowerSeries.from_list([0] + [1 / mp.factorial(k) for k in range(1, 9)], 8)
            g = revert_series(f, 8)
            identity = g.compose(f)
            for i, c in enumerate(identity.coefficients):
                assert abs(c - (1 if i == 1 else 0)) < mp.mpf("1e-30")

    def test_about_shifted_center(self) -> None:
        # f(x) = 3 + 2 (x - 1) inverts to g(y) = 1 + (y - 3) / 2
        f = PowerSeries.from_list([3, 2], 1, center=1)
        g = revert_series(f, 1)
        assert g.center == 3
        assert g.coefficients == (1, 0.5)

    def test_zero_linear(self) -> None:
        with pytest.raises(DomainError):
            revert_series(PowerSeries.from_list([0, 0, 1], 3), 2)

    @pytest.mark.parametrize("order", [0, 201])
    def test_order_range(self, order: int) -> None:
        with pytest.raises(InvalidParameterError):
            revert_series(PowerSeries.identity(3), order)

    def test_too_short(self) -> None:
        with pytest.raises(InvalidParameterError):
            revert_series(PowerSeries.identity(3), 5)

    def test_checked(self, ctx30: PrecisionContext) -> None:
        f = zeta3_generating_series(12, ctx30)
        checked = revert_checked(f, 12, ctx30)
        assert checked.order == 12


# ---------------------------------------------------------------------------
# pi from zeta(3)
# ---------------------------------------------------------------------------


class TestPiFromZeta3:
    """Reversion of the csc integral."""

    def test_closed_form_coefficients(self, ctx30: PrecisionContext) -> None:
        with ctx30.workdps():
            g = revert_series(zeta3_generating_series(6, ctx30), 6)
            for i, expected in enumerate(closed_form_coefficients(ctx30), start=1):
                assert abs(g[i] - expected) < ctx30.tolerance(5) * max(1, abs(expected))

    def test_convergence(self, ctx30: PrecisionContext) -> None:
        with mp.workdps(50):
            errors = {n: abs(pi_from_zeta3(n, ctx30) - mp.pi) for n in (5, 10, 20)}
        assert errors[10] < errors[5]
        assert errors[20] < errors[10]
        assert errors[20] < mp.mpf("1e-4")

    def test_generating_series_leading_terms(self, ctx30: PrecisionContext) -> None:
        series = zeta3_generating_series(4, ctx30)
        with mp.workdps(50):
            assert abs(series[1] - mp.pi / 7) < mp.mpf(10) ** -28
            assert abs(series[2] + mp.mpf(1) / 28) < mp.mpf(10) ** -28

    def test_centered_series_matches_integral(self, ctx30: PrecisionContext) -> None:
        series = centered_series(61, ctx30)
        with mp.workdps(40):
            x = mp.pi / 2 + mp.mpf("0.3")
            integral = mp.quad(lambda t: t * (mp.pi - t) / mp.sin(t), [0, x]) / 7
            assert abs(series(x) - integral) < mp.mpf("1e-25")

    def test_centered_value_at_center(self, ctx30: PrecisionContext) -> None:
        series = centered_series(3, ctx30)
        with mp.workdps(50):
            assert abs(series[0] - zeta_ref(3, ctx30) / 2) < mp.mpf(10) ** -28
            assert abs(series[1] - mp.pi ** 2 / 28) < mp.mpf(10) ** -28

    def test_centered_first_order(self, ctx30: PrecisionContext) -> None:
        value = pi_from_zeta3_centered(1, ctx30)
        with mp.workdps(50):
            expected = mp.pi / 2 + zeta_ref(3, ctx30) / 2 * 28 / mp.pi ** 2
            assert abs(value - expected) < mp.mpf(10) ** -27

    @pytest.mark.parametrize("order", [0, 1])
    def test_order_minimum(self, ctx30: PrecisionContext, order: int) -> None:
        with pytest.raises(InvalidParameterError):
            pi_from_zeta3(order, ctx30)
