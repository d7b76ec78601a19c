from fractions import Fraction

import pytest

from application.invariants import (_g_coefficients, check_centrality, invariant_X, invariant_Xtilde, y_element,
                                    y_transform_check)
from application.scalar_series import HbarSeries


@pytest.mark.parametrize("builder", [invariant_X, invariant_Xtilde])
def test_invariants_are_central(kxi, kxi_one, poincare_one, builder):
    for hopf in (kxi, kxi_one, poincare_one):
        result = check_centrality(hopf, builder(hopf))
        assert result.passed, "{}: {}".format(hopf.name, result.detail)


def test_generators_are_not_central(kxi):
    result = check_centrality(kxi, kxi.algebra.gen('E_C'), "centrality:E_C")
    assert not result.passed
    assert "centrality:E_C:H_A" in result.data["failures"]


def test_classical_limit_of_the_momentum_invariant(kxi):
    x = invariant_X(kxi)
    assert x.coefficient('E_C', 'F_C') == HbarSeries.one(kxi.order)
    assert x.coefficient('H_C', 'H_C') == HbarSeries.constant(Fraction(1, 4), kxi.order)


def test_series_of_g():
    assert _g_coefficients(3) == [1, Fraction(1, 3), Fraction(-2, 15)]


def test_y_element_leading_terms(kxi_one):
    y = y_element(kxi_one)
    assert y.coefficient('E_C', 'F_C') == HbarSeries.monomial(Fraction(1, 3), 2, kxi_one.order)
    assert y.coefficient('H_C', 'H_C') == HbarSeries.monomial(Fraction(1, 6), 2, kxi_one.order)
    assert y.coefficient().is_zero()


def test_y_transform_removes_xi(kxi_one):
    result = y_transform_check(kxi_one)
    assert result.passed, result.detail


def test_y_transform_needs_the_contracted_basis(poincare_one):
    assert not y_transform_check(poincare_one).passed
