from fractions import Fraction

import pytest

from application.algebra_core import TensorElement
from application.errors import NonlinearFirstOrder, NonNilpotentOrderZero
from application.quantum_algebras import build_uq_sl2
from application.rmatrix import (RMatrixSeries, check_hexagon, check_momentum_conjugation, check_poincare_rmatrix,
                                 check_quasi_cocommutativity, check_rmatrix_inverse, check_ybe,
                                 classical_limit_extract, rmat_d21e, rmat_k_xi, rmat_max_ext,
                                 sl2_factors)
from application.scalar_series import ExactScalar


def exact(value):
    return ExactScalar.of(Fraction(value))


@pytest.mark.parametrize("check", [check_rmatrix_inverse, check_quasi_cocommutativity, check_ybe, check_hexagon])
def test_uq_sl2_rmatrix(sl2_rmatrix, check):
    result = check(sl2_rmatrix)
    assert result.passed, result.detail


@pytest.mark.parametrize("check", [check_rmatrix_inverse, check_quasi_cocommutativity, check_ybe,
                                   check_momentum_conjugation])
def test_k_xi_rmatrix(kxi_rmatrix, check):
    result = check(kxi_rmatrix)
    assert result.passed, result.detail


@pytest.mark.parametrize("check", [check_quasi_cocommutativity, check_ybe])
def test_k_xi_rmatrix_with_xi(kxi_one, check):
    result = check(rmat_k_xi(hopf=kxi_one))
    assert result.passed, result.detail


def test_poincare_rmatrix_is_the_dictionary_image():
    assert check_poincare_rmatrix(1, 2).passed


def test_wrong_deformation_breaks_quasi_cocommutativity(sl2_small):
    g = sl2_small.algebra.gen
    wrong = RMatrixSeries(sl2_small, sl2_factors(g('E'), g('H'), g('F'), 2), "R at q^2")
    result = check_quasi_cocommutativity(wrong)
    assert not result.passed
    assert result.data["first_failing_order"] == 1
    assert result.data["failing_term_count"] > 0


def test_rmatrix_must_start_with_the_identity(sl2_small):
    identity = TensorElement.identity(sl2_small.algebra, 2)
    with pytest.raises(NonNilpotentOrderZero):
        RMatrixSeries(sl2_small, identity.scale(2), "twice the identity")


def test_inverse_is_two_sided(sl2_rmatrix):
    identity = TensorElement.identity(sl2_rmatrix.algebra, 2)
    assert sl2_rmatrix.inverse * sl2_rmatrix.value == identity


def test_classical_limit_of_uq_sl2(sl2_rmatrix):
    assert classical_limit_extract(sl2_rmatrix) == {('E', 'F'): exact(1), ('H', 'H'): exact(Fraction(1, 4))}


def test_classical_limit_of_k_xi(kxi_rmatrix, kxi_one):
    assert classical_limit_extract(kxi_rmatrix) == {
        ('E_C', 'F_A'): exact(1), ('E_A', 'F_C'): exact(1),
        ('H_C', 'H_A'): exact(Fraction(1, 4)), ('H_A', 'H_C'): exact(Fraction(1, 4)),
    }
    r = classical_limit_extract(rmat_k_xi(hopf=kxi_one))
    assert r[('E_C', 'F_C')] == exact(1)
    assert r[('H_C', 'H_C')] == exact(Fraction(1, 4))


def test_classical_limit_needs_a_first_order_term():
    with pytest.raises(NonlinearFirstOrder):
        hopf = build_uq_sl2(1, 0)
        classical_limit_extract(RMatrixSeries(hopf, TensorElement.identity(hopf.algebra, 2), "order zero"))


def test_superalgebra_rmatrices_start_with_the_cartan_part():
    d21 = rmat_d21e(Fraction(1, 3), 1)
    assert check_rmatrix_inverse(d21).passed
    r = classical_limit_extract(d21)
    # s1 H1⊗H1 plus the H1 part of s2 H_B⊗H_B
    assert r[('H1', 'H1')] == exact(1)
    max_ext = rmat_max_ext(0, 1)
    assert check_rmatrix_inverse(max_ext).passed
    assert classical_limit_extract(max_ext)[('H1', 'H_A')] == exact(Fraction(1, 4))


@pytest.mark.slow
def test_d21e_rmatrix_is_quasi_cocommutative():
    result = check_quasi_cocommutativity(rmat_d21e(Fraction(1, 3), 2))
    assert result.passed, result.detail


@pytest.mark.slow
def test_max_ext_rmatrix_is_quasi_cocommutative():
    result = check_quasi_cocommutativity(rmat_max_ext(1, 2))
    assert result.passed, result.detail
