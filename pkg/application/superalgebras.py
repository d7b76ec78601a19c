from application.algebra_core import (Algebra, AlgebraMap, CompositeDefinition, CompositeDeriver, Generator,
                                      GeneratorTable, RewriteRule, TensorElement, graded_commutator, hbar_function,
                                      q_commutator, q_power_element, sinh_ratio)
from application.errors import DegenerateParameter
from application.hopf_structures import HopfAlgebraDef
from application.message_logger import MessageLogger
from application.quantum_algebras import build_k_xi_iso3
from application.reports import compare, merge
from application.scalar_series import ExactScalar, HbarSeries, q_power, scalar_function

D21_E_NAMES = ('E2', 'E12', 'E_B', 'E32', 'E132', 'E1', 'E3')
D21_H_NAMES = ('H1', 'H2', 'H3')
D21_F_NAMES = ('F3', 'F1', 'F213', 'F23', 'F_B', 'F21', 'F2')
MAX_EXT_E_NAMES = ('E2', 'E12', 'E_A', 'E_C', 'E32', 'E132', 'E1', 'E3')
MAX_EXT_H_NAMES = ('H1', 'H2', 'H3', 'H_A')
MAX_EXT_F_NAMES = ('F3', 'F1', 'F213', 'F23', 'F_C', 'F_A', 'F21', 'F2')

ODD_NAMES = frozenset(('E2', 'E12', 'E32', 'E132', 'F2', 'F21', 'F23', 'F213'))
# simple root content of the positive generators
ROOTS = {
    'E1': (1, 0, 0), 'E2': (0, 1, 0), 'E3': (0, 0, 1),
    'E12': (1, 1, 0), 'E32': (0, 1, 1), 'E132': (1, 1, 1), 'E_B': (1, 2, 1),
}
# anti-automorphism E -> F with ħ -> -ħ; the even non-simple generators pick up a sign
MIRROR = {
    'E1': 'F1', 'E2': 'F2', 'E3': 'F3', 'E12': 'F21', 'E32': 'F23', 'E132': 'F213',
    'E_B': 'F_B', 'E_A': 'F_A', 'E_C': 'F_C',
}
MIRROR_SIGN = {'E_B': -1, 'E_A': -1, 'E_C': -1}

logger = MessageLogger('superalgebras').get_logger()


class CartanData:
    """
    Cartan matrix, symmetrisers d_i and q_i = e^(d_i ħ) of the family with parameters s = (s1, s2, s3)
    """

    def __init__(self, s, order):
        self.s = tuple(ExactScalar.of(x) for x in s)
        s1, s2, s3 = self.s
        if s1 + s2 + s3:
            raise DegenerateParameter("s1 + s2 + s3 must vanish, got {}".format(self.s))
        self.cartan = ((2, -1, 0), (s1, 0, s3), (0, -1, 2))
        self.d = (s1, ExactScalar.of(-1), s3)
        self.order = order

    @classmethod
    def from_epsilon(cls, epsilon, order):
        epsilon = ExactScalar.of(epsilon)
        return cls((1, epsilon, -1 - epsilon), order)

    def q(self, exponent):
        return q_power(exponent, self.order)

    def weight(self, i, name):
        """
        [H_i, E_name] = weight · E_name
        """
        roots = ROOTS[name]
        return sum((self.cartan[i][j] * roots[j] for j in range(3)), ExactScalar.of(0))

    def cartan_element(self, algebra, i, alpha):
        """
        q_i^(alpha H_i) as an element
        """
        return q_power_element(algebra.gen('H{}'.format(i + 1)), self.d[i] * alpha)


def _sinh_over_hbar(alpha, order):
    return scalar_function('sinh', alpha, order, 1)


""" Rule tables """


def _positive_rules(data, central, nu):
    """
    Rewrite rules among E2, E12, E_x, E32, E132, E1, E3 where E_x is E_B or E_C
    :param central: name of the even generator spanned by [E32, E12]
    :param nu: E32·E12 + e^(-s2 ħ) E12·E32 = nu · E_x
    :return: list of RewriteRule
    """
    s1, s2, s3 = data.s
    order = data.order
    p, r = data.q(s1), data.q(s3)
    one = HbarSeries.one(order)
    return [
        RewriteRule(('E12', 'E2'), s1),
        RewriteRule((central, 'E2'), -s2),
        RewriteRule(('E32', 'E2'), s3),
        RewriteRule(('E132', 'E2'), -s2, {('E12', 'E32'): r * (p * p - one), (central,): -(p * nu)}),
        RewriteRule(('E1', 'E2'), s1, {('E12',): one}),
        RewriteRule(('E3', 'E2'), s3, {('E32',): one}),
        RewriteRule((central, 'E12'), -s2),
        RewriteRule(('E32', 'E12'), -s2, {(central,): nu}),
        RewriteRule(('E132', 'E12'), s3),
        RewriteRule(('E1', 'E12'), -s1),
        RewriteRule(('E3', 'E12'), s3, {('E132',): one}),
        RewriteRule(('E32', central), -s2),
        RewriteRule(('E132', central), -s2),
        RewriteRule(('E1', central)),
        RewriteRule(('E3', central), ExactScalar.of(0), {('E32', 'E132'): (r.inverse() - p * p * r) / nu}),
        RewriteRule(('E132', 'E32'), s1),
        RewriteRule(('E1', 'E32'), s1, {('E132',): one}),
        RewriteRule(('E3', 'E32'), -s3),
        RewriteRule(('E1', 'E132'), -s1),
        RewriteRule(('E3', 'E132'), -s3),
        RewriteRule(('E3', 'E1')),
    ]


def _cartan_rules(data, positive_names, cartan_names):
    """
    H_i·E -> E·H_i + w E, and the H_i commute among themselves
    """
    rules = []
    for i, h in enumerate(cartan_names[:3]):
        for name in positive_names:
            if name in ROOTS:
                rules.append(RewriteRule((h, name), ExactScalar.of(0), {(name,): data.weight(i, name)}))
    for k, b in enumerate(cartan_names):
        for a in cartan_names[:k]:
            rules.append(RewriteRule((b, a)))
    return rules


def _mirror_word(word):
    sign = 1
    names = []
    for n in reversed(word):
        names.append(MIRROR.get(n, n))
        sign *= MIRROR_SIGN.get(n, 1)
    return tuple(names), sign


def mirror_rule(rule):
    """
    Image of b·a -> c a·b + T under the anti-automorphism θ: θ(a)·θ(b) -> c̄ θ(b)·θ(a) + λ_a λ_b θ(T)
    """
    b, a = rule.lhs
    lam = MIRROR_SIGN.get(a, 1) * MIRROR_SIGN.get(b, 1)
    tail = {}
    for word, coeff in rule.tail.items():
        image, sign = _mirror_word(word)
        if isinstance(coeff, HbarSeries):
            tail[image] = coeff.reflect() * (lam * sign)
        else:
            tail[image] = ExactScalar.of(coeff) * (lam * sign)
    return RewriteRule((MIRROR.get(a, a), MIRROR.get(b, b)), -ExactScalar.of(rule.koszul_exponent), tail)


def _add_with_mirror(algebra, rules):
    for rule in rules:
        algebra.add_rule(rule)
        if any(n in MIRROR for n in rule.lhs):
            algebra.add_rule(mirror_rule(rule))


def _simple_exchange(algebra, data):
    """
    [E_i, F_j] = δ_ij (q_i^(H_i) - q_i^(-H_i)) / (q_i - q_i^(-1))
    """
    for j in range(3):
        for i in range(3):
            f, e = 'F{}'.format(j + 1), 'E{}'.format(i + 1)
            if i != j:
                algebra.set_rule(f, e, algebra.zero())
                continue
            ratio = sinh_ratio(algebra.gen('H{}'.format(i + 1)), data.d[i])
            sigma = -1 if e in ODD_NAMES else 1
            algebra.set_rule(f, e, ratio.scale(-sigma))


def _composite_definitions(data, order):
    s1, s2, s3 = data.s
    one = HbarSeries.one(order)
    return {
        'E12': CompositeDefinition(one, 'E1', 'E2', s1),
        'E32': CompositeDefinition(one, 'E3', 'E2', s3),
        'E132': CompositeDefinition(one, 'E1', 'E32', s1),
        'F21': CompositeDefinition(one, 'F2', 'F1', -s1),
        'F23': CompositeDefinition(one, 'F2', 'F3', -s3),
        'F213': CompositeDefinition(one, 'F23', 'F1', -s1),
    }


def _table(names):
    return GeneratorTable([Generator(n, 1 if n in ODD_NAMES else 0, k) for k, n in enumerate(names)])


""" Coalgebra """


def _simple_coproducts(algebra, data):
    one = algebra.one()
    coproduct = {}
    for i in range(3):
        e, f, h = (algebra.gen('{}{}'.format(x, i + 1)) for x in 'EFH')
        coproduct['E{}'.format(i + 1)] = TensorElement.product(e, one) \
            + TensorElement.product(data.cartan_element(algebra, i, -1), e)
        coproduct['F{}'.format(i + 1)] = TensorElement.product(f, data.cartan_element(algebra, i, 1)) \
            + TensorElement.product(one, f)
        coproduct['H{}'.format(i + 1)] = TensorElement.product(h, one) + TensorElement.product(one, h)
    return coproduct


def _composite_coproducts(algebra, coproduct, definitions, names):
    """
    Δ of each composite from its defining q-commutator, in dependency order
    """
    order = algebra.order
    table = algebra.table
    for name in names:
        d = definitions[name]
        du, dv = coproduct[d.left], coproduct[d.right]
        odd = table.parity(table.index(d.left)) and table.parity(table.index(d.right))
        twist = q_power(d.beta, order) * (-1 if odd else 1)
        coproduct[name] = (du * dv - (dv * du).scale(twist)).scale(d.kappa)
    return coproduct


""" Identities """


def _serre_identities(algebra, data):
    s1, _, s3 = data.s
    g = algebra.gen
    elements = {
        'E2^2': g('E2') * g('E2'),
        'F2^2': g('F2') * g('F2'),
        '[E1,E3]': graded_commutator(g('E1'), g('E3')),
        '[F1,F3]': graded_commutator(g('F1'), g('F3')),
        '[E1,E12]': q_commutator(g('E1'), g('E12'), -s1),
        '[E3,E32]': q_commutator(g('E3'), g('E32'), -s3),
        '[F21,F1]': q_commutator(g('F21'), g('F1'), s1),
        '[F23,F3]': q_commutator(g('F23'), g('F3'), s3),
    }
    return merge("serre", [compare("serre:" + k, x) for k, x in sorted(elements.items())])


def _q_jacobi_identities(algebra, data):
    s1, _, s3 = data.s
    g = algebra.gen
    return merge("q_jacobi", [
        compare("q_jacobi:E132", q_commutator(g('E3'), g('E12'), s3) - g('E132')),
        compare("q_jacobi:F213", q_commutator(g('F21'), g('F3'), -s3) - g('F213')),
    ])


def _definition_identities(algebra, deriver):
    residuals = deriver.definition_residuals(algebra)
    return merge("composite_definitions",
                 [compare("composite_definitions:" + k, x) for k, x in sorted(residuals.items())])


def _check_relations(name, relations):
    return merge(name, [compare("{}:{}".format(name, k), lhs - rhs) for k, (lhs, rhs) in sorted(relations.items())])


""" U_ħ(d(2,1;ε)) """


def d21e_parameters(epsilon, order):
    epsilon = ExactScalar.of(epsilon)
    if not epsilon or epsilon == -1:
        raise DegenerateParameter("d(2,1;ε) degenerates at ε = {}".format(epsilon))
    return CartanData.from_epsilon(epsilon, order)


def even_normalisation(data):
    """
    κ_B = (q - q^-1)/(q_B^-1 - q_B) of E_B = κ_B [E32, E12]_(-ħ s2)
    """
    order = data.order
    return -(_sinh_over_hbar(1, order) / _sinh_over_hbar(data.s[1], order))


def h_b_element(algebra, data):
    s1, s2, s3 = data.s
    g = algebra.gen
    return (g('H1').scale(s1) - g('H2').scale(2) + g('H3').scale(s3)).scale(ExactScalar.of(1) / s2)


def build_uq_d21e(epsilon, order=2):
    """
    q-deformed exceptional superalgebra d(2,1;ε) with s = (1, ε, -1-ε), PBW letters
    E2 < E12 < E_B < E32 < E132 < E1 < E3 < H1 < H2 < H3 < F3 < F1 < F213 < F23 < F_B < F21 < F2
    :param epsilon: exact scalar, not 0 or -1
    :param order: truncation order N
    :return: HopfAlgebraDef
    """
    data = d21e_parameters(epsilon, order)
    s1, s2, s3 = data.s
    kappa = even_normalisation(data)
    definitions = _composite_definitions(data, order)
    definitions['E_B'] = CompositeDefinition(kappa, 'E32', 'E12', -s2)
    definitions['F_B'] = CompositeDefinition(-kappa, 'F21', 'F23', s2)
    deriver = CompositeDeriver(definitions)

    table = _table(D21_E_NAMES + D21_H_NAMES + D21_F_NAMES)
    algebra = Algebra("d21e", table, order, deriver=deriver,
                      parameters={'epsilon': ExactScalar.of(epsilon), 's1': s1, 's2': s2, 's3': s3})
    nu = kappa.inverse()
    _add_with_mirror(algebra, _positive_rules(data, 'E_B', nu))
    _add_with_mirror(algebra, _cartan_rules(data, D21_E_NAMES, D21_H_NAMES))
    _simple_exchange(algebra, data)

    coproduct = _simple_coproducts(algebra, data)
    _composite_coproducts(algebra, coproduct, definitions, ('E12', 'E32', 'E132', 'E_B', 'F21', 'F23', 'F213', 'F_B'))

    hopf = HopfAlgebraDef("U_h(d(2,1;eps))", algebra, coproduct,
                          metadata={'s': "({}, {}, {})".format(s1, s2, s3),
                                    'cartan': "a = ((2,-1,0), (s1,0,s3), (0,-1,2)), d = (s1,-1,s3)",
                                    'h_b': "s2 H_B = s1 H1 - 2 H2 + s3 H3"})
    hopf.identities = {
        'serre': lambda: _serre_identities(algebra, data),
        'q_jacobi': lambda: _q_jacobi_identities(algebra, data),
        'composite_definitions': lambda: _definition_identities(algebra, deriver),
        'even_sl2': lambda: _even_sl2_identities(algebra, data),
        'even_nonsimple_commutators': lambda: _even_nonsimple_identities(algebra, data),
        'nonsimple_coproduct_tail': lambda: verify_nonsimple_coproduct_tail(hopf),
    }
    logger.info("built U_h(d(2,1;{})) at order {}".format(epsilon, order))
    return hopf


def _even_sl2_identities(algebra, data):
    s2 = data.s[1]
    g = algebra.gen
    h_b = h_b_element(algebra, data)
    relations = {
        '[E_B,F_B]': (graded_commutator(g('E_B'), g('F_B')), sinh_ratio(h_b, s2)),
        '[H_B,E_B]': (graded_commutator(h_b, g('E_B')), g('E_B').scale(2)),
        '[H_B,F_B]': (graded_commutator(h_b, g('F_B')), g('F_B').scale(-2)),
    }
    for i in (1, 2, 3):
        e, f = 'E{}'.format(i), 'F{}'.format(i)
        delta = 1 if i == 2 else 0
        relations['[H_B,{}]'.format(e)] = (graded_commutator(h_b, g(e)), g(e).scale(delta))
        relations['[H_B,{}]'.format(f)] = (graded_commutator(h_b, g(f)), g(f).scale(-delta))
    return _check_relations("even_sl2", relations)


def _even_nonsimple_identities(algebra, data):
    """
    Commutators of E_B and F_B with the simple generators
    """
    s1, s2, s3 = data.s
    order = data.order
    g = algebra.gen
    p, t = data.q(s1), data.q(s2)
    p_inv, t_inv = p.inverse(), t.inverse()
    q_diff = _sinh_over_hbar(1, order).shift(1) * 2
    one = HbarSeries.one(order)
    e_b, f_b = g('E_B'), g('F_B')
    relations = {
        '[E_B,E1]': (graded_commutator(e_b, g('E1')), algebra.zero()),
        '[E_B,F1]': (graded_commutator(e_b, g('F1')), algebra.zero()),
        '[E_B,E2]': (graded_commutator(e_b, g('E2')), (g('E2') * e_b).scale(t_inv - one)),
        '[E_B,F2]': (graded_commutator(e_b, g('F2')),
                     ((g('E132') + (g('E32') * g('E1')).scale(p - p_inv)) * data.cartan_element(algebra, 1, -1))
                     .scale(p * t_inv)),
        '[E_B,E3]': (graded_commutator(e_b, g('E3')), (g('E32') * g('E132')).scale(p * q_diff)),
        '[E_B,F3]': (graded_commutator(e_b, g('F3')),
                     (g('E2') * g('E12') * data.cartan_element(algebra, 2, 1)).scale(p * q_diff)),
        '[F_B,F1]': (graded_commutator(f_b, g('F1')), algebra.zero()),
        '[F_B,E1]': (graded_commutator(f_b, g('E1')), algebra.zero()),
        '[F_B,F2]': (graded_commutator(f_b, g('F2')), (f_b * g('F2')).scale(one - t)),
        '[F_B,E2]': (graded_commutator(f_b, g('E2')),
                     (data.cartan_element(algebra, 1, 1) * (g('F213') + (g('F1') * g('F23')).scale(p_inv - p)))
                     .scale(p_inv * t)),
        '[F_B,F3]': (graded_commutator(f_b, g('F3')), (g('F213') * g('F23')).scale(-(p_inv * q_diff))),
        '[F_B,E3]': (graded_commutator(f_b, g('E3')),
                     (data.cartan_element(algebra, 2, -1) * g('F21') * g('F2')).scale(-(p_inv * q_diff))),
    }
    return _check_relations("even_nonsimple_commutators", relations)


def _tensor(*factors):
    return TensorElement.product(*factors)


def nonsimple_coproduct_formulas(hopf):
    """
    Closed forms of ΔE_B, ΔF_B and ΔH_B with their tails in the odd generators
    :return: dict name -> rank 2 TensorElement
    """
    algebra = hopf.algebra
    order = algebra.order
    data = CartanData(tuple(algebra.parameters[k] for k in ('s1', 's2', 's3')), order)
    s1, s2, s3 = data.s
    g = algebra.gen
    one = algebra.one()
    p, r, t = data.q(s1), data.q(s3), data.q(s2)
    q_diff = _sinh_over_hbar(1, order).shift(1) * 2
    h_b = h_b_element(algebra, data)
    k = [data.cartan_element(algebra, i, -1) for i in range(3)]
    k_bar = [data.cartan_element(algebra, i, 1) for i in range(3)]
    lead = q_diff * t.inverse()
    delta_e = _tensor(g('E_B'), one) + _tensor(q_power_element(h_b, -s2), g('E_B')) \
        - _tensor(g('E32') * k[0] * k[1], g('E12')).scale(lead) \
        + _tensor((g('E132').scale(p) + (g('E32') * g('E1')).scale(p * p - 1)) * k[1], g('E2')).scale(lead) \
        + _tensor(g('E3') * k[0] * k[1] * k[1], g('E2') * g('E12')).scale(lead * (r * r - 1))
    lead = q_diff * t
    p_inv, r_inv = p.inverse(), r.inverse()
    delta_f = _tensor(g('F_B'), q_power_element(h_b, s2)) + _tensor(one, g('F_B')) \
        - _tensor(g('F21'), k_bar[0] * k_bar[1] * g('F23')).scale(lead) \
        + _tensor(g('F2'), k_bar[1] * (g('F213').scale(p_inv) + (g('F1') * g('F23')).scale(p_inv * p_inv - 1))) \
        .scale(lead) \
        + _tensor(g('F21') * g('F2'), k_bar[0] * k_bar[1] * k_bar[1] * g('F3')).scale(lead * (r_inv * r_inv - 1))
    return {
        'E_B': delta_e,
        'F_B': delta_f,
        'H_B': _tensor(h_b, one) + _tensor(one, h_b),
    }


def verify_nonsimple_coproduct_tail(hopf):
    """
    Δ of the defining q-commutators of E_B and F_B against their closed forms, and ΔH_B primitive
    :param hopf: HopfAlgebraDef from build_uq_d21e
    :return: CheckResult
    """
    algebra = hopf.algebra
    data = CartanData(tuple(algebra.parameters[k] for k in ('s1', 's2', 's3')), algebra.order)
    expected = nonsimple_coproduct_formulas(hopf)
    computed = {
        'E_B': hopf.delta(algebra.gen('E_B')),
        'F_B': hopf.delta(algebra.gen('F_B')),
        'H_B': hopf.delta(h_b_element(algebra, data)),
    }
    results = [compare("nonsimple_coproduct_tail:" + n, computed[n] - expected[n]) for n in sorted(expected)]
    result = merge("nonsimple_coproduct_tail", results)
    if not result.passed:
        logger.warning("coproduct tails differ: {}".format(result.detail))
    return result


""" Maximally extended sl(2|2) """


def h_c_element(algebra):
    g = algebra.gen
    return g('H1') - g('H2').scale(2) - g('H3')


def _rotation_rules(order):
    """
    E_A and the Cartan generators against the positive generators; E_C is central there
    """
    hbar = HbarSeries.hbar(order)
    q_diff = _sinh_over_hbar(1, order).shift(1) * 2
    q = q_power(1, order)
    zero = ExactScalar.of(0)
    rules = [
        RewriteRule(('E_A', 'E2'), zero, {('E2', 'E_C'): -hbar}),
        RewriteRule(('E_A', 'E12'), zero, {('E12', 'E_C'): -hbar}),
        RewriteRule(('E_C', 'E_A')),
        RewriteRule(('E32', 'E_A'), zero, {('E_C', 'E32'): -hbar}),
        RewriteRule(('E132', 'E_A'), zero, {('E_C', 'E132'): -hbar}),
        RewriteRule(('E1', 'E_A')),
        RewriteRule(('E3', 'E_A'), zero, {('E32', 'E132'): -(q * q_diff)}),
        RewriteRule(('H1', 'E_A')),
        RewriteRule(('H2', 'E_A'), zero, {('E_C',): -1}),
        RewriteRule(('H3', 'E_A')),
        RewriteRule(('H_A', 'E_A'), zero, {('E_A',): 2}),
        RewriteRule(('H_A', 'E_C'), zero, {('E_C',): 2}),
    ]
    for h in ('H1', 'H2', 'H3'):
        rules.append(RewriteRule((h, 'E_C')))
    for name, roots in ROOTS.items():
        if name != 'E_B':
            rules.append(RewriteRule(('H_A', name), zero, {(name,): roots[1]}))
    return rules


def _rotation_exchange(algebra, data, xi):
    """
    F·E rules involving E_A, F_A, E_C, F_C
    """
    order = algebra.order
    g = algebra.gen
    q = q_power(1, order)
    q_inv = q.inverse()
    q_diff = _sinh_over_hbar(1, order).shift(1) * 2
    h_c = h_c_element(algebra)
    sinh_c = hbar_function('sinh', h_c, 1, 1)
    cosh_c = hbar_function('cosh', h_c, 1)
    shifted = g('H_A') + h_c.scale(xi)

    algebra.set_rule('F1', 'E_A', algebra.zero())
    algebra.set_rule('F_A', 'E1', algebra.zero())
    algebra.set_rule('F2', 'E_A', -((g('E132') + (g('E32') * g('E1')).scale(q_diff))
                                    * data.cartan_element(algebra, 1, -1)).scale(q))
    algebra.set_rule('F3', 'E_A', -(g('E2') * g('E12') * data.cartan_element(algebra, 2, 1)).scale(q * q_diff))
    algebra.set_rule('F_A', 'E2', (data.cartan_element(algebra, 1, 1)
                                   * (g('F213') - (g('F1') * g('F23')).scale(q_diff))).scale(q_inv))
    algebra.set_rule('F_A', 'E3', -(data.cartan_element(algebra, 2, -1) * g('F21') * g('F2')).scale(q_inv * q_diff))
    algebra.set_rule('F_A', 'E_A', -(cosh_c * shifted) + sinh_c.scale(xi))
    algebra.set_rule('F_C', 'E_A', -sinh_c)
    algebra.set_rule('F_A', 'E_C', -sinh_c)
    algebra.set_rule('F_C', 'E_C', algebra.zero())
    for i in (1, 2, 3):
        algebra.set_rule('F_C', 'E{}'.format(i), algebra.zero())
        algebra.set_rule('F{}'.format(i), 'E_C', algebra.zero())


def _rotation_coproducts(algebra, data, xi):
    order = algebra.order
    g = algebra.gen
    one = algebra.one()
    q = q_power(1, order)
    q_inv = q.inverse()
    q_diff = _sinh_over_hbar(1, order).shift(1) * 2
    hbar = HbarSeries.hbar(order)
    h_c = h_c_element(algebra)
    shifted = g('H_A') + h_c.scale(xi)
    q_minus = q_power_element(h_c, -1)
    q_plus = q_power_element(h_c, 1)
    k = [data.cartan_element(algebra, i, -1) for i in range(3)]
    k_bar = [data.cartan_element(algebra, i, 1) for i in range(3)]
    delta_e_a = _tensor(g('E_A'), one) + _tensor(q_minus, g('E_A')) \
        - _tensor(shifted * q_minus, g('E_C')).scale(hbar) \
        - _tensor(g('E32') * k[0] * k[1], g('E12')).scale(q_diff) \
        + _tensor((g('E132') + (g('E32') * g('E1')).scale(q_diff)) * k[1], g('E2')).scale(q_diff * q) \
        - _tensor(g('E3') * k[0] * k[1] * k[1], g('E2') * g('E12')).scale(q_diff * q_diff * q_inv)
    delta_f_a = _tensor(g('F_A'), q_plus) + _tensor(one, g('F_A')) \
        + _tensor(g('F_C'), q_plus * shifted).scale(hbar) \
        - _tensor(g('F21'), k_bar[0] * k_bar[1] * g('F23')).scale(q_diff) \
        + _tensor(g('F2'), k_bar[1] * (g('F213') - (g('F1') * g('F23')).scale(q_diff))).scale(q_diff * q_inv) \
        + _tensor(g('F21') * g('F2'), k_bar[0] * k_bar[1] * k_bar[1] * g('F3')).scale(q_diff * q_diff * q)
    return {
        'E_A': delta_e_a,
        'F_A': delta_f_a,
        'H_A': _tensor(g('H_A'), one) + _tensor(one, g('H_A')),
        'E_C': _tensor(g('E_C'), one) + _tensor(q_minus, g('E_C')),
        'F_C': _tensor(g('F_C'), q_plus) + _tensor(one, g('F_C')),
    }


def _central_identities(algebra):
    order = algebra.order
    g = algebra.gen
    sinh_1 = _sinh_over_hbar(1, order)
    h_c = h_c_element(algebra)
    definitions = {
        'E_C': (g('E_C'), -q_commutator(g('E32'), g('E12')).scale(sinh_1)),
        'F_C': (g('F_C'), q_commutator(g('F21'), g('F23')).scale(sinh_1)),
    }
    commuting = {}
    for name in ('E1', 'E2', 'E3', 'F1', 'F2', 'F3', 'H1', 'H3'):
        commuting['[E_C,{}]'.format(name)] = (graded_commutator(g('E_C'), g(name)), algebra.zero())
        commuting['[F_C,{}]'.format(name)] = (graded_commutator(g('F_C'), g(name)), algebra.zero())
        commuting['[H_C,{}]'.format(name)] = (graded_commutator(h_c, g(name)), algebra.zero())
    return _check_relations("central_definition", definitions), _check_relations("central_extension", commuting)


def _rotation_identities(algebra):
    """
    [H_A, E_i] = δ_i2 E_i and [H_A, F_i] = -δ_i2 F_i
    """
    g = algebra.gen
    relations = {}
    for i in (1, 2, 3):
        e, f = 'E{}'.format(i), 'F{}'.format(i)
        delta = 1 if i == 2 else 0
        relations['[H_A,{}]'.format(e)] = (graded_commutator(g('H_A'), g(e)), g(e).scale(delta))
        relations['[H_A,{}]'.format(f)] = (graded_commutator(g('H_A'), g(f)), g(f).scale(-delta))
    relations['[E_A,E2]'] = (graded_commutator(g('E_A'), g('E2')),
                             (g('E2') * g('E_C')).scale(-HbarSeries.hbar(algebra.order)))
    relations['[F_A,F2]'] = (graded_commutator(g('F_A'), g('F2')),
                             (g('F_C') * g('F2')).scale(-HbarSeries.hbar(algebra.order)))
    return _check_relations("momentum_rotation_commutators", relations)


def k_xi_embedding(hopf, kxi):
    """
    Algebra map K_xi(iso3) -> max-ext sl(2|2) with H_C = H1 - 2H2 - H3
    """
    algebra = hopf.algebra
    g = algebra.gen
    images = {'E_C': g('E_C'), 'E_A': g('E_A'), 'H_C': h_c_element(algebra), 'H_A': g('H_A'),
              'F_C': g('F_C'), 'F_A': g('F_A')}
    return AlgebraMap(kxi.algebra, algebra, images, "k_xi_sector")


def build_max_ext_sl22(xi=0, order=2):
    """
    The maximally extended sl(2|2) Hopf algebra: the sl(2|2) letters with s = (1, 0, -1)
    plus the rotation generators E_A, F_A, H_A and the central E_C, F_C
    :param xi: exact scalar
    :param order: truncation order N
    :return: HopfAlgebraDef
    """
    xi = ExactScalar.of(xi)
    data = CartanData((1, 0, -1), order)
    s1, s2, s3 = data.s
    definitions = _composite_definitions(data, order)
    deriver = CompositeDeriver(definitions)
    table = _table(MAX_EXT_E_NAMES + MAX_EXT_H_NAMES + MAX_EXT_F_NAMES)
    algebra = Algebra("max_ext_sl22", table, order, deriver=deriver,
                      parameters={'xi': xi, 's1': s1, 's2': s2, 's3': s3})
    # E32·E12 + E12·E32 = -2ħ/(q - q^-1) E_C
    nu = -_sinh_over_hbar(1, order).inverse()
    _add_with_mirror(algebra, _positive_rules(data, 'E_C', nu))
    _add_with_mirror(algebra, _cartan_rules(data, MAX_EXT_E_NAMES, MAX_EXT_H_NAMES))
    _add_with_mirror(algebra, _rotation_rules(order))
    _simple_exchange(algebra, data)
    _rotation_exchange(algebra, data, xi)

    coproduct = _simple_coproducts(algebra, data)
    _composite_coproducts(algebra, coproduct, definitions, ('E12', 'E32', 'E132', 'F21', 'F23', 'F213'))
    coproduct.update(_rotation_coproducts(algebra, data, xi))

    metadata = {
        'identification': "L = E_A + ξE_C, M = -F_A, H_A = H_A, P = -2ħ/(q-q^-1) E_C, K = 2ħ/(q-q^-1) F_C, "
                          "C = H_C/2",
        'kappa': "κ = 2ξ",
        'h_c': "H_C = H1 - 2H2 - H3",
    }
    hopf = HopfAlgebraDef("max-ext sl(2|2)", algebra, coproduct, metadata=metadata)
    hopf.identities = {
        'serre': lambda: _serre_identities(algebra, data),
        'q_jacobi': lambda: _q_jacobi_identities(algebra, data),
        'composite_definitions': lambda: _definition_identities(algebra, deriver),
        'central_definition': lambda: _central_identities(algebra)[0],
        'central_extension': lambda: _central_identities(algebra)[1],
        'momentum_rotation_commutators': lambda: _rotation_identities(algebra),
        'k_xi_sector': lambda: k_xi_embedding(hopf, build_k_xi_iso3(xi, order)).check_algebra_map(),
    }
    logger.info("built max-ext sl(2|2) at ξ = {}, order {}".format(xi, order))
    return hopf
