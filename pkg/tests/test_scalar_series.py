from fractions import Fraction

import pytest

from application.errors import NonzeroConstantTerm, ZeroConstantTerm
from application.scalar_series import (I, ONE, ExactScalar, HbarSeries, dilog_series, log1m_over_x_series, q_factorial,
                                       q_number, q_power, qdilog_coefficients, scalar_function, series_exp,
                                       series_inverse, series_log1p, taylor_in_hbar)


def series(*coeffs, order=None):
    return HbarSeries([ExactScalar.of(Fraction(c)) for c in coeffs], order)


def test_gaussian_rational_arithmetic():
    z = ExactScalar(Fraction(3, 5), Fraction(1, 2))
    assert z * z.conjugate() == ExactScalar.of(Fraction(61, 100))
    assert (z / z) == ONE
    assert I * I == ExactScalar.of(-1)
    assert str(ExactScalar(Fraction(3, 5), Fraction(1, 2))) == "3/5+1/2i"
    assert str(-I) == "-i"
    with pytest.raises(ZeroDivisionError):
        ONE / ExactScalar.of(0)


def test_truncated_product_keeps_the_smaller_order():
    a = series(1, 1, 1, order=2)
    b = series(1, -1, 0, 0, order=3)
    product = a * b
    assert product.order == 2
    assert product == series(1, 0, 0, order=2)


def test_inverse_of_one_plus_hbar():
    inverse = series_inverse(series(1, 1, order=5))
    assert inverse == series(1, -1, 1, -1, 1, -1)


def test_inverse_needs_a_constant_term():
    with pytest.raises(ZeroConstantTerm):
        series_inverse(series(0, 1, order=3))


def test_exp_and_log1p_invert_each_other():
    x = series(0, 1, Fraction(1, 3), -2, order=6)
    assert series_log1p(series_exp(x) - 1) == x
    assert series_exp(series_log1p(x)) == x + 1


def test_exp_rejects_a_constant_term():
    with pytest.raises(NonzeroConstantTerm):
        series_exp(series(1, 1, order=2))
    with pytest.raises(NonzeroConstantTerm):
        series_log1p(series(2, order=2))


def test_q_power_is_the_exponential():
    assert q_power(1, 4) == series(1, 1, Fraction(1, 2), Fraction(1, 6), Fraction(1, 24))
    assert q_power(2, 2) * q_power(-2, 2) == HbarSeries.one(2)


def test_q_numbers():
    assert q_number(2, 1, 3) == series(2, 1, Fraction(1, 2), Fraction(1, 6))
    assert q_number(5, 0, 3) == HbarSeries.constant(5, 3)
    assert q_number(0, 1, 3).is_zero()
    # [-n] = -q^-n [n]
    assert q_number(-3, 1, 4) == -(q_power(-3, 4) * q_number(3, 1, 4))


def test_q_factorial():
    assert q_factorial(3, 1, 1) == series(6, 9)
    assert q_factorial(4, 0, 2) == HbarSeries.constant(24, 2)
    assert q_factorial(0, 1, 3) == HbarSeries.one(3)


def test_q_factorial_recursion_to_order_six():
    for n in range(1, 9):
        assert q_factorial(n, 1, 6) == q_factorial(n - 1, 1, 6) * q_number(n, 1, 6)


def test_taylor_data_of_sinh_over_hbar():
    terms = dict(taylor_in_hbar('sinh', 1, 2, 1))
    assert sorted(terms) == [1, 3]
    assert terms[1] == HbarSeries.one(2)
    assert terms[3] == HbarSeries.monomial(Fraction(1, 6), 2, 2)
    with pytest.raises(ZeroConstantTerm):
        taylor_in_hbar('cosh', 1, 2, 1)


def test_scalar_functions():
    assert scalar_function('sinh', 1, 3, 1) == series(1, 0, Fraction(1, 6), 0)
    assert scalar_function('cosh-1', 2, 4) == series(0, 0, 2, 0, Fraction(2, 3))
    # cosh² - sinh² = 1
    c = scalar_function('cosh', 1, 6)
    s = scalar_function('sinh', 1, 6)
    assert c * c - s * s == HbarSeries.one(6)


def test_qdilog_coefficients_reduce_to_log_series_at_q_one():
    coefficients = qdilog_coefficients(8, 0, 6)
    for n, c in enumerate(coefficients, start=1):
        expected = Fraction(1, n) if n == 1 else 0
        assert c == HbarSeries.constant(expected, 6)


def test_qdilog_first_coefficients():
    c = qdilog_coefficients(2, 1, 2)
    assert c[0] == HbarSeries.one(2)
    # (1 - q)/(2[2]) = -ħ/4 + ...
    assert c[1].coeffs[0] == 0
    assert c[1].coeffs[1] == ExactScalar.of(Fraction(-1, 4))


def test_dilog_and_log_tables():
    assert dilog_series(3) == [ONE, ExactScalar.of(Fraction(1, 4)), ExactScalar.of(Fraction(1, 9))]
    assert log1m_over_x_series(2) == [-ONE, ExactScalar.of(Fraction(-1, 2)), ExactScalar.of(Fraction(-1, 3))]
