import random
from fractions import Fraction

import pytest

from application.algebra_core import (Algebra, AlgebraMap, Generator, GeneratorTable, RewriteRule, TensorElement,
                                      adjoint_series, check_local_confluence, exp_element, graded_commutator,
                                      normal_form, q_commutator, q_power_element, rewrite, sinh_ratio)
from application.errors import (AlgebraMismatch, InvalidRule, MissingRule, NameCollision, NonNilpotentOrderZero,
                                RankMismatch, UnknownGenerator)
from application.scalar_series import ExactScalar, HbarSeries, q_power


def classical_sl2(h_e=2, order=2):
    table = GeneratorTable([('E', 0), ('H', 0), ('F', 0)])
    rules = [
        RewriteRule(('H', 'E'), tail={('E',): h_e}),
        RewriteRule(('F', 'H'), tail={('F',): 2}),
        RewriteRule(('F', 'E'), tail={('H',): -1}),
    ]
    return Algebra("sl2", table, order, rules)


def clifford(order=1):
    table = GeneratorTable([Generator('psi', 1, 0), Generator('chi', 1, 1)])
    return Algebra("clifford", table, order, [RewriteRule(('chi', 'psi'), tail={(): 1})])


def test_generator_table_order_and_parity():
    table = GeneratorTable([Generator('b', 1, 5), Generator('a', 0, 2)])
    assert table.names() == ['a', 'b']
    assert table.encode(('b', 'a')) == (1, 0)
    assert table.is_normal((0, 1))
    assert not table.is_normal((1, 0))
    assert not table.is_normal((1, 1))
    assert table.is_normal((0, 0))
    with pytest.raises(UnknownGenerator):
        table.index('c')


def test_generator_table_rejects_duplicates():
    with pytest.raises(NameCollision):
        GeneratorTable([('A', 0), ('A', 0)])
    with pytest.raises(NameCollision):
        GeneratorTable([Generator('A', 0, 1), Generator('B', 0, 1)])


def test_rules_must_be_out_of_order_and_unique():
    algebra = classical_sl2()
    with pytest.raises(InvalidRule):
        algebra.add_rule(RewriteRule(('E', 'H')))
    with pytest.raises(NameCollision):
        algebra.add_rule(RewriteRule(('H', 'E')))


def test_missing_rule_is_reported():
    table = GeneratorTable([('A', 0), ('B', 0)])
    algebra = Algebra("free", table, 1)
    with pytest.raises(MissingRule):
        algebra.gen('B') * algebra.gen('A')


def test_normal_ordering_of_classical_sl2():
    algebra = classical_sl2()
    e, h, f = (algebra.gen(n) for n in ('E', 'H', 'F'))
    assert graded_commutator(h, e) == e.scale(2)
    assert graded_commutator(h, f) == f.scale(-2)
    assert graded_commutator(e, f) == h
    assert normal_form(algebra, [(('F', 'E'), 1)]) == e * f - h
    assert algebra.monomial('F', 'H', 'E') == f * h * e


def test_confluence_of_sl2(sl2):
    assert check_local_confluence(sl2.algebra).passed
    assert check_local_confluence(classical_sl2()).passed


def test_confluence_detects_a_broken_jacobi_identity():
    result = check_local_confluence(classical_sl2(h_e=3))
    assert not result.passed
    assert "F·H·E" in result.data["failures"]


def test_q_deformed_exchange(sl2):
    algebra = sl2.algebra
    e, h, f = (algebra.gen(n) for n in ('E', 'H', 'F'))
    assert graded_commutator(e, f) == sinh_ratio(h, 1)
    # [E, F] = H + ħ²(H³ - H)/6 + O(ħ⁴)
    bracket = graded_commutator(e, f)
    assert bracket.coefficient('H') == HbarSeries([1, 0, Fraction(-1, 6), 0, Fraction(7, 360)], 4)
    assert bracket.coefficient('H', 'H', 'H') == HbarSeries([0, 0, Fraction(1, 6), 0, Fraction(-1, 36)], 4)


def test_cartan_conjugation(sl2):
    algebra = sl2.algebra
    e, h = algebra.gen('E'), algebra.gen('H')
    # q^H E q^-H = q^2 E
    assert q_power_element(h, 1) * e * q_power_element(h, -1) == e.scale(q_power(2, algebra.order))


def test_odd_generators_square_to_zero():
    algebra = clifford()
    psi, chi = algebra.gen('psi'), algebra.gen('chi')
    assert (psi * psi).is_zero()
    assert (chi * chi).is_zero()
    assert psi * chi + chi * psi == 1
    assert graded_commutator(psi, chi) == 1
    assert check_local_confluence(algebra).passed


def test_q_commutator_of_even_elements(sl2):
    algebra = sl2.algebra
    e, h = algebra.gen('E'), algebra.gen('H')
    assert q_commutator(e, e, 1) == (e * e).scale(1 - q_power(1, algebra.order))


def test_tensor_koszul_signs():
    algebra = clifford()
    one, psi, chi = algebra.one(), algebra.gen('psi'), algebra.gen('chi')
    left = TensorElement.product(one, psi) * TensorElement.product(chi, one)
    assert left == -TensorElement.product(chi, psi)
    assert TensorElement.product(psi, chi).flip() == -TensorElement.product(chi, psi)


def test_tensor_legs(sl2):
    algebra = sl2.algebra
    e, f, one = algebra.gen('E'), algebra.gen('F'), algebra.one()
    t = TensorElement.product(e, f)
    assert t.legs((0, 2), 3) == TensorElement.product(e, one, f)
    assert t.legs((2, 0), 3) == TensorElement.product(f, one, e)
    assert t.legs((1, 0), 2) == t.flip()
    with pytest.raises(RankMismatch):
        t.legs((0, 0), 3)
    with pytest.raises(RankMismatch):
        TensorElement.product(e, f, e).flip()


def test_mixing_algebras_is_refused(sl2_small):
    other = classical_sl2()
    t = TensorElement.product(sl2_small.algebra.gen('E'), sl2_small.algebra.gen('F'))
    u = TensorElement.product(other.gen('E'), other.gen('F'))
    with pytest.raises(AlgebraMismatch):
        t - u
    with pytest.raises(AlgebraMismatch):
        sl2_small.algebra.gen('E') + other.gen('E')


def test_contract_multiplies_the_slots(sl2):
    algebra = sl2.algebra
    e, f = algebra.gen('E'), algebra.gen('F')
    assert TensorElement.product(f, e).contract() == f * e


def test_exponentials(sl2):
    algebra = sl2.algebra
    h = algebra.gen('H')
    assert exp_element(h.scale(HbarSeries.hbar(algebra.order))) == q_power_element(h, 1)


def test_adjoint_series(sl2):
    algebra = sl2.algebra
    e, h = algebra.gen('E'), algebra.gen('H')
    assert adjoint_series(h.scale(HbarSeries.hbar(algebra.order)), e) == e.scale(q_power(2, algebra.order))
    with pytest.raises(NonNilpotentOrderZero):
        adjoint_series(h, e)


def test_algebra_maps(sl2):
    algebra = sl2.algebra
    e, h, f = (algebra.gen(n) for n in ('E', 'H', 'F'))
    involution = AlgebraMap(algebra, algebra, {'E': f, 'F': e, 'H': -h}, "chevalley")
    assert involution.check_algebra_map().passed
    assert involution.apply(e * f) == f * e
    wrong = AlgebraMap(algebra, algebra, {'E': e.scale(2), 'F': f, 'H': h}, "rescaled")
    assert not wrong.check_algebra_map().passed
    with pytest.raises(UnknownGenerator):
        AlgebraMap(algebra, algebra, {'E': e}, "partial")


def test_scalars_and_valuation(sl2):
    algebra = sl2.algebra
    x = algebra.gen('E').scale(HbarSeries.monomial(ExactScalar.of(3), 2, algebra.order))
    assert x.valuation() == 2
    assert algebra.zero().valuation() is None
    assert (algebra.hbar() * algebra.hbar()).coefficient() == HbarSeries.monomial(1, 2, algebra.order)


def random_words(algebra, rng, count, degree):
    names = algebra.table.names()
    return [tuple(rng.choice(names) for _ in range(rng.randint(0, degree))) for _ in range(count)]


def random_element(algebra, rng, degree=3, count=3):
    terms = {}
    for word in random_words(algebra, rng, count, degree):
        terms[word] = terms.get(word, 0) + Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    return algebra.element(terms)


@pytest.mark.parametrize("word", [('F', 'E'), ('F', 'H', 'E'), ('F', 'F', 'E', 'E'), ('E', 'F', 'H', 'F', 'E')])
def test_rewrite_agrees_with_normal_form(sl2_small, word):
    for algebra in (classical_sl2(), sl2_small.algebra):
        reference, _ = rewrite(algebra, [(word, 1)])
        assert reference == normal_form(algebra, [(word, 1)])
        for seed in range(5):
            rng = random.Random(seed)
            assert rewrite(algebra, [(word, 1)], pick=rng.choice)[0] == reference


def test_rewrite_is_strategy_independent_on_kxi(kxi_one):
    algebra = kxi_one.algebra
    rng = random.Random(11)
    for word in random_words(algebra, rng, 6, 3):
        reference = normal_form(algebra, [(word, 1)])
        assert rewrite(algebra, [(word, 1)])[0] == reference
        assert rewrite(algebra, [(word, 1)], pick=rng.choice)[0] == reference
        assert rewrite(algebra, [(word, 1)], pick=max)[0] == reference


def test_rewrite_handles_odd_squares():
    algebra = clifford()
    element, steps = rewrite(algebra, [(('chi', 'psi', 'psi'), 1), (('chi', 'chi'), 1)])
    assert element.is_zero()
    assert steps >= 2
    assert rewrite(algebra, [(('chi', 'psi'), 1)])[0] == 1 - algebra.gen('psi') * algebra.gen('chi')


@pytest.mark.parametrize("degree", [1, 2, 3, 4, 5])
def test_rewrite_step_count_is_polynomial_in_the_degree(degree):
    algebra = classical_sl2()
    worst = ('F',) * ((degree + 1) // 2) + ('E',) * (degree // 2)
    rng = random.Random(degree)
    words = [worst] + random_words(algebra, rng, 10, degree)
    for word in words:
        for pick in (None, max, rng.choice):
            _, steps = rewrite(algebra, [(word, 1)], pick=pick)
            assert steps <= (len(word) + 1) ** 4
    assert rewrite(algebra, [(('E', 'H', 'F'), 1)])[1] == 0


@pytest.mark.parametrize("seed", range(4))
def test_multiplication_is_associative(sl2_small, seed):
    rng = random.Random(seed)
    for algebra in (sl2_small.algebra, clifford(2)):
        x, y, z = (random_element(algebra, rng) for _ in range(3))
        assert (x * y) * z == x * (y * z)


def test_multiplication_is_associative_on_kxi(kxi_one):
    rng = random.Random(5)
    x, y, z = (random_element(kxi_one.algebra, rng, degree=2, count=2) for _ in range(3))
    assert (x * y) * z == x * (y * z)
