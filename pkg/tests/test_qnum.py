"""
Unit tests for half-integers and q-number arithmetic.
"""
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsphere.errors import ConfigError, QOverflowError
from qsphere.qnum import (
    HALF,
    HalfInt,
    QContext,
    check_shell_range,
    q_number,
    q_power,
    q_sqrt_product,
)
from tests.data.expected_values import Q_NUMBERS, Q_POWERS

PASCAL_QS = (0.3, 0.5, 0.9, 0.999, 1.0)

half_ints = st.integers(min_value=-80, max_value=80).map(HalfInt)


@pytest.mark.unit
class TestHalfInt:

    def test_of_parses_strings_and_fractions(self):
        assert HalfInt.of("3/2").twice == 3
        assert HalfInt.of(Fraction(-5, 2)).twice == -5
        assert HalfInt.of(2).twice == 4
        assert HalfInt.of(0.5) == HALF

    def test_of_rejects_non_half_integers(self):
        with pytest.raises(ValueError):
            HalfInt.of(0.3)
        with pytest.raises(ValueError):
            HalfInt.of("1/3")

    def test_rejects_non_integer_twice(self):
        with pytest.raises(TypeError):
            HalfInt(1.5)
        with pytest.raises(TypeError):
            HalfInt(True)

    def test_str_and_float(self):
        assert str(HalfInt(3)) == "3/2"
        assert str(HalfInt(-4)) == "-2"
        assert float(HalfInt(-3)) == -1.5
        assert repr(HALF) == "HalfInt(1/2)"

    @given(half_ints, half_ints)
    def test_arithmetic_is_closed_and_exact(self, a, b):
        assert (a + b).as_fraction() == a.as_fraction() + b.as_fraction()
        assert (a - b).as_fraction() == a.as_fraction() - b.as_fraction()
        assert (-a).as_fraction() == -a.as_fraction()
        assert (a + 1).as_fraction() == a.as_fraction() + 1
        assert (1 - a).as_fraction() == 1 - a.as_fraction()

    @given(half_ints, half_ints)
    def test_ordering_matches_rational_value(self, a, b):
        assert (a < b) == (a.as_fraction() < b.as_fraction())
        assert (a == b) == (a.as_fraction() == b.as_fraction())

    @given(half_ints)
    def test_is_integer_iff_twice_even(self, a):
        assert a.is_integer == (a.twice % 2 == 0)
        assert a.is_integer == (a.as_fraction().denominator == 1)


@pytest.mark.unit
class TestQContext:

    @pytest.mark.parametrize("q", [0.0, -0.5, 1.0000001, 2.0, float("nan"), float("inf")])
    def test_rejects_out_of_range_q(self, q):
        with pytest.raises(ConfigError):
            QContext(q)

    def test_rejects_non_numeric_q(self):
        with pytest.raises(ConfigError):
            QContext("half")

    def test_log_q_is_exactly_zero_at_one(self):
        ctx = QContext(1.0)
        assert ctx.log_q == 0.0
        assert ctx.is_classical

    def test_log_q_accurate_near_one(self):
        ctx = QContext(1.0 - 1e-12)
        assert ctx.log_q == pytest.approx(-1e-12, rel=1e-6)

    @pytest.mark.parametrize("q", [0.3, 0.4999, 1e-4, 1e-8, 1e-12, 1e-17, 5e-324])
    def test_log_q_accurate_far_from_one(self, q):
        assert QContext(q).log_q == pytest.approx(math.log(q), rel=1e-15)

    def test_powers_of_tiny_q(self):
        assert q_power(QContext(1e-12), -10) == pytest.approx(1e120, rel=1e-12)
        assert q_power(QContext(1e-17), 0.5) == pytest.approx(math.sqrt(1e-17), rel=1e-12)


@pytest.mark.unit
class TestQNumber:

    @pytest.mark.parametrize("q,x,expected", Q_NUMBERS)
    def test_reference_values(self, q, x, expected):
        assert q_number(QContext(q), x) == pytest.approx(expected, rel=1e-13)

    @pytest.mark.parametrize("q,x,expected", Q_POWERS)
    def test_q_power_reference_values(self, q, x, expected):
        assert q_power(QContext(q), x) == pytest.approx(expected, rel=1e-13)

    def test_q_power_takes_positive_root_on_half_integers(self):
        assert q_power(QContext(0.25), HalfInt(-1)) == pytest.approx(2.0, rel=1e-14)

    @pytest.mark.parametrize("q", PASCAL_QS)
    def test_zero_one_and_odd(self, q):
        ctx = QContext(q)
        assert q_number(ctx, 0) == 0.0
        assert q_number(ctx, 1) == pytest.approx(1.0, rel=1e-14)
        assert q_number(ctx, HalfInt(-7)) == pytest.approx(-q_number(ctx, HalfInt(7)), rel=1e-14)

    @settings(max_examples=200)
    @given(half_ints, st.sampled_from(PASCAL_QS))
    def test_q_pascal(self, x, q):
        ctx = QContext(q)
        lhs = q_number(ctx, x + 1)
        terms = (q * q_number(ctx, x), q_power(ctx, -x))
        scale = max(abs(lhs), *(abs(t) for t in terms))
        assert abs(lhs - sum(terms)) <= 1e-12 * scale

    @pytest.mark.parametrize("q", PASCAL_QS)
    def test_product_identity(self, q):
        ctx = QContext(q)
        lhs = q_number(ctx, 3) * q_number(ctx, 4)
        rhs = q_number(ctx, 6) + q_number(ctx, 2) * q_number(ctx, 3)
        assert lhs == pytest.approx(rhs, rel=1e-12)

    @given(st.floats(min_value=-20, max_value=20, allow_nan=False))
    def test_near_classical_stability(self, x):
        ctx = QContext(1.0 - 1e-10)
        assert abs(q_number(ctx, x) - x) <= 1e-6 * abs(x) + 1e-15

    @given(st.integers(min_value=1, max_value=120), st.sampled_from(PASCAL_QS))
    def test_positive_for_positive_argument(self, twice, q):
        assert q_number(QContext(q), HalfInt(twice)) > 0

    def test_overflow_guard(self):
        ctx = QContext(0.01)
        with pytest.raises(QOverflowError):
            q_number(ctx, 200)
        with pytest.raises(QOverflowError):
            q_power(ctx, -200)

    def test_overflow_is_an_overflow_error(self):
        with pytest.raises(OverflowError):
            q_number(QContext(1e-300), 5)


@pytest.mark.unit
class TestSqrtProductAndPreflight:

    def test_sqrt_product_value(self):
        ctx = QContext(0.5)
        assert q_sqrt_product(ctx, 2, 3) == pytest.approx(math.sqrt(2.5 * 5.25), rel=1e-14)

    def test_sqrt_product_vanishes_on_non_positive_argument(self):
        ctx = QContext(0.5)
        assert q_sqrt_product(ctx, 3, 0) == 0.0
        assert q_sqrt_product(ctx, HalfInt(-1), 4) == 0.0

    def test_sqrt_product_of_nothing_is_one(self):
        assert q_sqrt_product(QContext(0.5)) == 1.0

    def test_preflight_accepts_desk_scale(self):
        check_shell_range(QContext(0.5), 24)
        check_shell_range(QContext(1.0), 10_000)

    def test_preflight_rejects_and_records_point(self):
        with pytest.raises(QOverflowError) as exc_info:
            check_shell_range(QContext(0.01), 100)
        assert exc_info.value.q == 0.01
        assert exc_info.value.shells == 100
        assert exc_info.value.code == "overflow_guard"
