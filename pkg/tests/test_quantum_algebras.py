from fractions import Fraction

import pytest

from application.algebra_core import check_local_confluence, graded_commutator
from application.errors import NameCollision
from application.hopf_structures import HOPF_CHECKS
from application.quantum_algebras import (POINCARE_NAMES, basis_change_to_poincare, build_sl2_tensor, build_tensor_hopf,
                                          build_uq_sl2, check_adjoint_dictionary, check_poincare_dictionary,
                                          inverse_poincare_dictionary, poincare_dictionary)
from application.scalar_series import ExactScalar


def test_undeformed_sl2_is_the_enveloping_algebra():
    hopf = build_uq_sl2(0, 2)
    g = hopf.algebra.gen
    assert graded_commutator(g('E'), g('F')) == g('H')
    assert hopf.delta(g('E')) == hopf.delta_cop(g('E'))


@pytest.mark.parametrize("check", sorted(HOPF_CHECKS))
def test_poincare_basis_is_a_hopf_algebra(poincare_one, check):
    result = HOPF_CHECKS[check](poincare_one)
    assert result.passed, result.detail


def test_poincare_basis_rules_are_confluent(poincare_one):
    assert check_local_confluence(poincare_one.algebra).passed


def test_tensor_product_of_two_deformations():
    hopf = build_sl2_tensor(Fraction(1, 2), 1, 2)
    g = hopf.algebra.gen
    assert hopf.parameters['epsilon_tilde'] == ExactScalar.of(Fraction(-1, 4))
    assert hopf.algebra.table.names() == ['E', 'Et', 'H', 'Ht', 'F', 'Ft']
    assert graded_commutator(g('E'), g('Ft')).is_zero()
    assert graded_commutator(g('Ht'), g('F')).is_zero()
    assert check_local_confluence(hopf.algebra).passed
    for check in ("coassociativity", "coproduct_homomorphism", "antipode"):
        assert HOPF_CHECKS[check](hopf).passed


def test_tensor_product_needs_distinct_names(sl2_small):
    with pytest.raises(NameCollision):
        build_tensor_hopf(sl2_small, sl2_small)


def test_tensor_product_keeps_each_factor_ordered(sl2_small):
    other = build_uq_sl2(1, 2, ('Et', 'Ht', 'Ft'), "tilde")
    with pytest.raises(NameCollision):
        build_tensor_hopf(sl2_small, other, letter_order=['H', 'E', 'F', 'Et', 'Ht', 'Ft'])


def test_poincare_dictionary(kxi_one):
    poincare = basis_change_to_poincare(kxi_one)
    assert poincare.algebra.table.names() == list(POINCARE_NAMES)
    result = check_poincare_dictionary(kxi_one, poincare)
    assert result.passed, result.detail


def test_dictionary_images_of_the_cartan_generators(kxi_one):
    poincare = basis_change_to_poincare(kxi_one)
    forward = poincare_dictionary(kxi_one, poincare)
    backward = inverse_poincare_dictionary(kxi_one, poincare)
    p_0 = poincare.algebra.gen('P_0')
    assert forward.apply(kxi_one.algebra.gen('H_C')) == p_0.scale(ExactScalar(0, 2))
    assert backward.apply(p_0) == kxi_one.algebra.gen('H_C').scale(ExactScalar(0, Fraction(-1, 2)))


def test_adjoint_form_of_the_dictionary(poincare_one):
    assert check_adjoint_dictionary(poincare_one).passed
