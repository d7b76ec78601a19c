from fractions import Fraction

from application.algebra_core import (Algebra, AlgebraMap, Generator, GeneratorTable, RewriteRule, TensorElement,
                                      adjoint_series, hbar_function, q_power_element, sinh_ratio)
from application.errors import NameCollision
from application.hopf_structures import HopfAlgebraDef, check_hopf_map
from application.message_logger import MessageLogger
from application.reports import compare, merge
from application.scalar_series import I, ExactScalar, HbarSeries

SL2_NAMES = ('E', 'H', 'F')
TILDE_NAMES = ('Et', 'Ht', 'Ft')
K_XI_NAMES = ('E_C', 'E_A', 'H_C', 'H_A', 'F_C', 'F_A')
POINCARE_NAMES = ('P_p', 'L_p', 'P_0', 'L_0', 'P_m', 'L_m')

logger = MessageLogger('quantum_algebras').get_logger()


def _tensor(*factors):
    return TensorElement.product(*factors)


""" U_{alpha ħ}(sl2) """


def build_uq_sl2(alpha=1, order=4, names=SL2_NAMES, name=None):
    """
    q-deformed sl(2) with deformation q^alpha
    :param alpha: exact scalar, 0 gives the undeformed enveloping algebra
    :param order: truncation order N
    :param names: names of (E, H, F)
    :return: HopfAlgebraDef
    """
    alpha = ExactScalar.of(alpha)
    e, h, f = names
    table = GeneratorTable([Generator(e, 0, 0), Generator(h, 0, 1), Generator(f, 0, 2)])
    algebra = Algebra(name or "uq_sl2", table, order, parameters={'alpha': alpha})
    E, H, F = algebra.gen(e), algebra.gen(h), algebra.gen(f)

    algebra.set_rule(h, e, E.scale(2))
    algebra.set_rule(f, h, F.scale(2))
    algebra.set_rule(f, e, -sinh_ratio(H, alpha))

    k_plus = q_power_element(H, alpha)
    k_minus = q_power_element(H, -alpha)
    one = algebra.one()
    coproduct = {
        e: _tensor(E, one) + _tensor(k_minus, E),
        h: _tensor(H, one) + _tensor(one, H),
        f: _tensor(F, k_plus) + _tensor(one, F),
    }
    return HopfAlgebraDef(name or "U_h(sl2)", algebra, coproduct,
                          metadata={'deformation': "q^{} with q = e^ħ".format(alpha)})


""" Tensor product of two Hopf algebras """


def build_tensor_hopf(first, second, name=None, letter_order=None, parameters=None):
    """
    Graded tensor product of two Hopf algebras: generators commute across the factors
    :param first: HopfAlgebraDef
    :param second: HopfAlgebraDef
    :param letter_order: optional list of all generator names giving the PBW order
    :return: HopfAlgebraDef
    """
    names_a = first.algebra.table.names()
    names_b = second.algebra.table.names()
    clash = set(names_a) & set(names_b)
    if clash:
        raise NameCollision("generators {} appear in both factors".format(", ".join(sorted(clash))))
    parity = {g.name: g.parity for g in first.algebra.table}
    parity.update({g.name: g.parity for g in second.algebra.table})
    ordered = list(letter_order) if letter_order else names_a + names_b
    if sorted(ordered) != sorted(names_a + names_b):
        raise NameCollision("letter order must list every generator once")
    table = GeneratorTable([Generator(n, parity[n], k) for k, n in enumerate(ordered)])
    order = min(first.order, second.order)
    merged = dict(first.parameters)
    merged.update({k + '_2': v for k, v in second.parameters.items()})
    merged.update(parameters or {})
    algebra = Algebra(name or "tensor", table, order, parameters=merged)

    for names in (names_a, names_b):
        positions = [table.index(n) for n in names]
        if positions != sorted(positions):
            raise NameCollision("letter order must keep the order inside each factor")

    for factor in (first, second):
        factor.algebra.ensure_all_rules()
        for rule in factor.algebra.rules():
            algebra.add_rule(RewriteRule(rule.lhs, rule.koszul_exponent, rule.tail))
    for b_name in names_b:
        for a_name in names_a:
            b, a = (b_name, a_name) if table.index(b_name) > table.index(a_name) else (a_name, b_name)
            algebra.add_rule(RewriteRule((b, a)))

    coproduct = {}
    counit = {}
    for factor in (first, second):
        embed = AlgebraMap(factor.algebra, algebra,
                           {n: algebra.gen(n) for n in factor.algebra.table.names()})
        for n in factor.algebra.table.names():
            coproduct[n] = embed.apply_tensor(factor.coproduct_of(n))
            counit[n] = factor.counit_value(n)
    return HopfAlgebraDef(name or "{} x {}".format(first.name, second.name), algebra, coproduct, counit)


def build_sl2_tensor(epsilon, xi=0, order=3, beta=-1):
    """
    U_{εħ}(sl2) ⊗ U_{ε~ħ}(sl2) with ε~ = β ε + ξ ε², letters in blocks (E, Et, H, Ht, F, Ft)
    """
    epsilon = ExactScalar.of(epsilon)
    xi = ExactScalar.of(xi)
    epsilon_tilde = epsilon * beta + xi * epsilon * epsilon
    first = build_uq_sl2(epsilon, order, SL2_NAMES, "uq_sl2")
    second = build_uq_sl2(epsilon_tilde, order, TILDE_NAMES, "uq_sl2_tilde")
    blocks = ('E', 'Et', 'H', 'Ht', 'F', 'Ft')
    return build_tensor_hopf(first, second, "U_eh(sl2) x U_e~h(sl2)", blocks,
                             {'epsilon': epsilon, 'epsilon_tilde': epsilon_tilde, 'xi': xi,
                              'beta': ExactScalar.of(beta)})


""" K_xi(iso3) """


def k_xi_generators(algebra):
    return tuple(algebra.gen(n) for n in K_XI_NAMES)


def build_k_xi_iso3(xi=0, order=3):
    """
    The contracted Hopf algebra with generators E_A, F_A, H_A (rotations) and E_C, F_C, H_C (momenta)
    :param xi: exact scalar deformation parameter surviving the contraction
    :param order: truncation order N
    :return: HopfAlgebraDef
    """
    xi = ExactScalar.of(xi)
    table = GeneratorTable([Generator(n, 0, k) for k, n in enumerate(K_XI_NAMES)])
    algebra = Algebra("k_xi_iso3", table, order, parameters={'xi': xi})
    e_c, e_a, h_c, h_a, f_c, f_a = k_xi_generators(algebra)

    sinh_c = hbar_function('sinh', h_c, 1, 1)
    cosh_c = hbar_function('cosh', h_c, 1)
    shifted = h_a + h_c.scale(xi)

    algebra.set_rule('E_A', 'E_C', algebra.zero())
    algebra.set_rule('H_C', 'E_C', algebra.zero())
    algebra.set_rule('H_C', 'E_A', e_c.scale(2))
    algebra.set_rule('H_A', 'E_C', e_c.scale(2))
    algebra.set_rule('H_A', 'E_A', e_a.scale(2))
    algebra.set_rule('H_A', 'H_C', algebra.zero())
    algebra.set_rule('F_C', 'E_C', algebra.zero())
    algebra.set_rule('F_C', 'E_A', -sinh_c)
    algebra.set_rule('F_C', 'H_C', algebra.zero())
    algebra.set_rule('F_C', 'H_A', f_c.scale(2))
    algebra.set_rule('F_A', 'E_C', -sinh_c)
    algebra.set_rule('F_A', 'E_A', -(cosh_c * shifted) + sinh_c.scale(xi))
    algebra.set_rule('F_A', 'H_C', f_c.scale(2))
    algebra.set_rule('F_A', 'H_A', f_a.scale(2))
    algebra.set_rule('F_A', 'F_C', algebra.zero())

    one = algebra.one()
    q_minus = q_power_element(h_c, -1)
    q_plus = q_power_element(h_c, 1)
    hbar = HbarSeries.hbar(order)
    coproduct = {
        'E_A': _tensor(e_a, one) + _tensor(q_minus, e_a) - _tensor(shifted * q_minus, e_c).scale(hbar),
        'F_A': _tensor(f_a, q_plus) + _tensor(one, f_a) + _tensor(f_c, q_plus * shifted).scale(hbar),
        'H_A': _tensor(h_a, one) + _tensor(one, h_a),
        'E_C': _tensor(e_c, one) + _tensor(q_minus, e_c),
        'F_C': _tensor(f_c, q_plus) + _tensor(one, f_c),
        'H_C': _tensor(h_c, one) + _tensor(one, h_c),
    }
    metadata = {
        'kappa': "ħ = 1/(2κ) matches the kappa-Poincaré presentation",
        'xi': "ξ survives the contraction and cannot be removed from algebra and coalgebra together",
    }
    return HopfAlgebraDef("K_xi(iso3)", algebra, coproduct, metadata=metadata)


""" Poincaré basis """


def build_poincare(xi=0, order=3):
    """
    K_xi(iso3) in the canonical rotation/momentum basis P_0, P_±, L_0, L_±
    """
    xi = ExactScalar.of(xi)
    table = GeneratorTable([Generator(n, 0, k) for k, n in enumerate(POINCARE_NAMES)])
    algebra = Algebra("poincare", table, order, parameters={'xi': xi})
    p_p, l_p, p_0, l_0, p_m, l_m = (algebra.gen(n) for n in POINCARE_NAMES)

    # sinh(2iħP_0)/ħ and cosh(2iħP_0)
    sinh_2 = hbar_function('sinh', p_0, I * 2, 1)
    cosh_2 = hbar_function('cosh', p_0, I * 2)
    shifted = l_0 + p_0.scale(xi)

    algebra.set_rule('L_p', 'P_p', algebra.zero())
    algebra.set_rule('P_0', 'P_p', algebra.zero())
    algebra.set_rule('P_0', 'L_p', -p_p.scale(I))
    algebra.set_rule('L_0', 'P_p', -p_p.scale(I))
    algebra.set_rule('L_0', 'L_p', -l_p.scale(I))
    algebra.set_rule('L_0', 'P_0', algebra.zero())
    algebra.set_rule('P_m', 'P_p', algebra.zero())
    algebra.set_rule('P_m', 'L_p', -sinh_2.scale(Fraction(1, 4)))
    algebra.set_rule('P_m', 'P_0', algebra.zero())
    algebra.set_rule('P_m', 'L_0', -p_m.scale(I))
    algebra.set_rule('L_m', 'P_p', -sinh_2.scale(Fraction(1, 4)))
    algebra.set_rule('L_m', 'L_p', -(cosh_2 * shifted).scale(I / 2) + sinh_2.scale(xi / 4))
    algebra.set_rule('L_m', 'P_0', -p_m.scale(I))
    algebra.set_rule('L_m', 'L_0', -l_m.scale(I))
    algebra.set_rule('L_m', 'P_m', algebra.zero())

    one = algebra.one()
    q_plus = q_power_element(p_0, I)
    q_minus = q_power_element(p_0, -I)
    i_hbar = HbarSeries.monomial(I, 1, order)
    coproduct = {
        'P_0': _tensor(p_0, one) + _tensor(one, p_0),
        'L_0': _tensor(l_0, one) + _tensor(one, l_0),
        'P_p': _tensor(p_p, q_plus) + _tensor(q_minus, p_p),
        'P_m': _tensor(p_m, q_plus) + _tensor(q_minus, p_m),
        'L_p': _tensor(l_p, q_plus) + _tensor(q_minus, l_p)
        + (_tensor(p_p, q_plus * shifted) - _tensor(shifted * q_minus, p_p)).scale(i_hbar),
        'L_m': _tensor(l_m, q_plus) + _tensor(q_minus, l_m)
        + (_tensor(p_m, q_plus * shifted) - _tensor(shifted * q_minus, p_m)).scale(i_hbar),
    }
    return HopfAlgebraDef("K_xi(iso3), Poincare basis", algebra, coproduct,
                          metadata={'kappa': "ħ = 1/(2κ)"})


def basis_change_to_poincare(kxi):
    """
    The Poincaré-basis Hopf algebra matching a built K_xi(iso3)
    """
    return build_poincare(kxi.parameters['xi'], kxi.order)


def poincare_dictionary(kxi, poincare):
    """
    Algebra map K_xi -> Poincaré basis: H_C = 2iP_0, E_C = 2q^(-iP_0)P_+, E_A = 2q^(-iP_0)(L_+ - iħP_+(L_0+ξP_0)), ...
    """
    xi = kxi.parameters['xi']
    algebra = poincare.algebra
    p_p, l_p, p_0, l_0, p_m, l_m = (algebra.gen(n) for n in POINCARE_NAMES)
    shifted = l_0 + p_0.scale(xi)
    i_hbar = HbarSeries.monomial(I, 1, algebra.order)
    q_minus = q_power_element(p_0, -I)
    q_plus = q_power_element(p_0, I)
    images = {
        'H_C': p_0.scale(I * 2),
        'H_A': l_0.scale(I * 2),
        'E_C': (q_minus * p_p).scale(2),
        'F_C': (q_plus * p_m).scale(2),
        'E_A': (q_minus * (l_p - (p_p * shifted).scale(i_hbar))).scale(2),
        'F_A': (q_plus * (l_m + (p_m * shifted).scale(i_hbar))).scale(2),
    }
    return AlgebraMap(kxi.algebra, algebra, images, "poincare_dictionary")


def inverse_poincare_dictionary(kxi, poincare):
    """
    Algebra map Poincaré basis -> K_xi: P_0 = H_C/2i, P_+ = ½q^(H_C/2)E_C, L_+ = ½q^(H_C/2)E_A + (ħ/4)q^(H_C/2)E_C(H_A+ξH_C), ...
    """
    xi = kxi.parameters['xi']
    algebra = kxi.algebra
    e_c, e_a, h_c, h_a, f_c, f_a = k_xi_generators(algebra)
    shifted = h_a + h_c.scale(xi)
    quarter_hbar = HbarSeries.monomial(Fraction(1, 4), 1, algebra.order)
    half_plus = q_power_element(h_c, Fraction(1, 2))
    half_minus = q_power_element(h_c, Fraction(-1, 2))
    images = {
        'P_0': h_c.scale(-I / 2),
        'L_0': h_a.scale(-I / 2),
        'P_p': (half_plus * e_c).scale(Fraction(1, 2)),
        'P_m': (half_minus * f_c).scale(Fraction(1, 2)),
        'L_p': (half_plus * e_a).scale(Fraction(1, 2)) + (half_plus * e_c * shifted).scale(quarter_hbar),
        'L_m': (half_minus * f_a).scale(Fraction(1, 2)) - (half_minus * f_c * shifted).scale(quarter_hbar),
    }
    return AlgebraMap(poincare.algebra, algebra, images, "inverse_poincare_dictionary")


def adjoint_generator(poincare):
    """
    log T = ħ(P_0 L_0 + ξ P_0²/2)
    """
    algebra = poincare.algebra
    xi = poincare.parameters['xi']
    p_0, l_0 = algebra.gen('P_0'), algebra.gen('L_0')
    return (p_0 * l_0 + (p_0 * p_0).scale(xi / 2)).scale(HbarSeries.hbar(algebra.order))


def check_adjoint_dictionary(poincare):
    """
    2Ad_T(P_±) = 2q^(∓iP_0)P_± and 2Ad_T(L_±) = 2q^(∓iP_0)(L_± ∓ iħP_±(L_0+ξP_0))
    """
    algebra = poincare.algebra
    xi = poincare.parameters['xi']
    log_t = adjoint_generator(poincare)
    p_p, l_p, p_0, l_0, p_m, l_m = (algebra.gen(n) for n in POINCARE_NAMES)
    shifted = l_0 + p_0.scale(xi)
    i_hbar = HbarSeries.monomial(I, 1, algebra.order)
    q_minus = q_power_element(p_0, -I)
    q_plus = q_power_element(p_0, I)
    expected = {
        'P_p': q_minus * p_p,
        'P_m': q_plus * p_m,
        'L_p': q_minus * (l_p - (p_p * shifted).scale(i_hbar)),
        'L_m': q_plus * (l_m + (p_m * shifted).scale(i_hbar)),
        'P_0': p_0,
        'L_0': l_0,
    }
    results = [compare("poincare_dictionary:Ad_T:" + n, adjoint_series(log_t, algebra.gen(n)) - x)
               for n, x in sorted(expected.items())]
    return merge("poincare_dictionary:adjoint", results)


def check_poincare_dictionary(kxi, poincare):
    """
    Both dictionary maps are Hopf algebra maps and invert each other on generators
    """
    forward = poincare_dictionary(kxi, poincare)
    backward = inverse_poincare_dictionary(kxi, poincare)
    results = [check_hopf_map(forward, kxi, poincare, "poincare_dictionary:forward"),
               check_hopf_map(backward, poincare, kxi, "poincare_dictionary:backward"),
               check_adjoint_dictionary(poincare)]
    for n in K_XI_NAMES:
        g = kxi.algebra.gen(n)
        results.append(compare("poincare_dictionary:roundtrip:" + n, backward.apply(forward.apply(g)) - g))
    result = merge("poincare_dictionary", results)
    if not result.passed:
        logger.warning("poincare dictionary failed: {}".format(result.detail))
    return result
