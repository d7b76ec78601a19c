from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from application.algebra_core import (TensorElement, adjoint_series, exp_element, polynomial_in, q_power_element,
                                      qexp_element)
from application.errors import NonlinearFirstOrder, NonNilpotentOrderZero
from application.message_logger import MessageLogger
from application.quantum_algebras import (adjoint_generator, build_k_xi_iso3, build_poincare, build_sl2_tensor,
                                          build_uq_sl2, poincare_dictionary)
from application.reports import FAIL, CheckResult, compare, merge
from application.scalar_series import ExactScalar, HbarSeries, dilog_series, log1m_over_x_series, scalar_function
from application.superalgebras import build_max_ext_sl22, build_uq_d21e, d21e_parameters, h_b_element, h_c_element

logger = MessageLogger('rmatrix').get_logger()


class RMatrixSeries:
    """
    Universal R-matrix truncated at ħ^N, with its inverse
    """

    def __init__(self, hopf, value, name):
        """
        Class constructor
        :param hopf: HopfAlgebraDef the R-matrix belongs to
        :param value: rank 2 TensorElement with ħ^0 term 1⊗1
        :param name: display name
        """
        self.logger = MessageLogger('rmatrix').get_logger()
        self.hopf = hopf
        self.value = value
        self.name = name
        self.__inverse = None
        deviation = value - TensorElement.identity(hopf.algebra, 2)
        valuation = deviation.valuation()
        if valuation is not None and valuation < 1:
            raise NonNilpotentOrderZero("{}: the ħ^0 term is not 1⊗1".format(name))

    @property
    def algebra(self):
        return self.hopf.algebra

    @property
    def order(self):
        return self.hopf.order

    @property
    def inverse(self):
        """
        Neumann series Σ (1⊗1 - R)^n, finite since 1⊗1 - R starts at ħ^1
        """
        if self.__inverse is None:
            identity = TensorElement.identity(self.algebra, 2)
            x = identity - self.value
            result = identity
            power = identity
            while True:
                power = power * x
                if power.is_zero():
                    break
                result = result + power
            self.__inverse = result
            self.logger.debug("{}: inverse has {} terms".format(self.name, len(result.terms)))
        return self.__inverse

    def __repr__(self):
        return "RMatrixSeries({}, order {}, {} terms)".format(self.name, self.order, len(self.value.terms))


""" Building blocks """


def _tensor(*factors):
    return TensorElement.product(*factors)


def _q_difference(alpha, order):
    """
    q^alpha - q^-alpha = 2 sinh(alpha ħ)
    """
    return scalar_function('sinh', alpha, order) * 2


def _cartan_factor(exponent):
    """
    exp[½ħ x] for a rank 2 tensor x
    """
    order = exponent.algebra.order
    return exp_element(exponent.scale(HbarSeries.monomial(Fraction(1, 2), 1, order)))


def sl2_factors(e, h, f, alpha):
    """
    exp_{-2αħ}[(q^α - q^-α) E⊗F] · exp[½αħ H⊗H] over the algebra of the given elements
    """
    alpha = ExactScalar.of(alpha)
    order = e.algebra.order
    upper = qexp_element(_tensor(e, f).scale(_q_difference(alpha, order)), -2 * alpha)
    return upper * _cartan_factor(_tensor(h, h).scale(alpha))


def contracted_factors(e_c, e_a, f_c, f_a, xi, scale):
    """
    The two logarithmic factors of the contracted R-matrix with x = scale·ħ²·E_C⊗F_C:
    exp[-(ξ/2ħ)Li2(x) - (ξ/ħ)log(1 - x)] · exp[-(scale ħ/2)(E_C⊗F_A + E_A⊗F_C) log(1 - x)/x]
    """
    order = e_c.algebra.order
    xi = ExactScalar.of(xi)
    y = _tensor(e_c, f_c)
    mixed = _tensor(e_c, f_a) + _tensor(e_a, f_c)
    count = order // 2 + 1
    dilog = dilog_series(count)
    log_over_x = log1m_over_x_series(count)
    first = []
    for n in range(1, count + 1):
        if 2 * n - 1 > order:
            break
        value = (-xi / 2 * dilog[n - 1] - xi * log_over_x[n - 1]) * scale ** n
        first.append((n, HbarSeries.monomial(value, 2 * n - 1, order)))
    second = []
    for n in range(0, count + 1):
        if 2 * n + 1 > order:
            break
        value = -ExactScalar.of(scale) / 2 * log_over_x[n] * scale ** n
        second.append((n, HbarSeries.monomial(value, 2 * n + 1, order)))
    return exp_element(polynomial_in(y, first)) * exp_element(mixed * polynomial_in(y, second))


""" Bosonic R-matrices """


def rmat_uq_sl2(alpha=1, order=4, hopf=None):
    """
    exp_{-2αħ}[(q^α - q^-α)E⊗F] exp[½αħ H⊗H]
    :return: RMatrixSeries
    """
    hopf = hopf or build_uq_sl2(alpha, order)
    g = hopf.algebra.gen
    value = sl2_factors(g('E'), g('H'), g('F'), hopf.parameters['alpha'])
    return RMatrixSeries(hopf, value, "R(U_h(sl2))")


def rmat_k_xi(xi=0, order=3, hopf=None):
    """
    Finite R-matrix of K_xi(iso3): the Li2/log factors and exp[½ħ(H_C⊗H_A + H_A⊗H_C + ξH_C⊗H_C)]
    """
    hopf = hopf or build_k_xi_iso3(xi, order)
    xi = hopf.parameters['xi']
    g = hopf.algebra.gen
    value = contracted_factors(g('E_C'), g('E_A'), g('F_C'), g('F_A'), xi, 4) \
        * _cartan_factor(_tensor(g('H_C'), g('H_A')) + _tensor(g('H_A'), g('H_C'))
                         + _tensor(g('H_C'), g('H_C')).scale(xi))
    return RMatrixSeries(hopf, value, "R(K_xi(iso3))")


def prelimit_rmatrix(hopf, wrong_pairing=False):
    """
    R of U_{εħ}(sl2) ⊗ U_{ε~ħ}(sl2) as the product of the two factors; with wrong_pairing the
    second factor is replaced by its inverse opposite
    :param hopf: HopfAlgebraDef from build_sl2_tensor
    """
    g = hopf.algebra.gen
    parameters = hopf.parameters
    first = sl2_factors(g('E'), g('H'), g('F'), parameters['epsilon'])
    second = sl2_factors(g('Et'), g('Ht'), g('Ft'), parameters['epsilon_tilde'])
    name = "R(sl2 x sl2)"
    if wrong_pairing:
        second = RMatrixSeries(hopf, second, "second factor").inverse.flip()
        name += ", inverse opposite second factor"
    return RMatrixSeries(hopf, first * second, name)


def rmat_product_prelimit(epsilon, xi=0, order=3, beta=-1):
    return prelimit_rmatrix(build_sl2_tensor(epsilon, xi, order, beta))


def rmat_wrong_pairing_prelimit(epsilon, xi=0, order=3, beta=-1):
    return prelimit_rmatrix(build_sl2_tensor(epsilon, xi, order, beta), wrong_pairing=True)


def rmat_poincare(xi=0, order=3, hopf=None):
    """
    Ad_{T⊗T} of the logarithmic factors in P_±, L_± times exp[-2ħ(P_0⊗L_0 + L_0⊗P_0 + ξP_0⊗P_0)]
    """
    hopf = hopf or build_poincare(xi, order)
    xi = hopf.parameters['xi']
    algebra = hopf.algebra
    g = algebra.gen
    one = algebra.one()
    log_t = adjoint_generator(hopf)
    log_tt = _tensor(log_t, one) + _tensor(one, log_t)
    logarithmic = contracted_factors(g('P_p'), g('L_p'), g('P_m'), g('L_m'), xi, 16)
    cartan = _tensor(g('P_0'), g('L_0')) + _tensor(g('L_0'), g('P_0')) + _tensor(g('P_0'), g('P_0')).scale(xi)
    value = adjoint_series(log_tt, logarithmic) * _cartan_factor(cartan.scale(-4))
    return RMatrixSeries(hopf, value, "R(K_xi(iso3), Poincare basis)")


def check_poincare_rmatrix(xi=0, order=3):
    """
    The Poincaré-basis R-matrix is the image of the K_xi R-matrix under the dictionary
    """
    kxi = build_k_xi_iso3(xi, order)
    poincare = build_poincare(xi, order)
    phi = poincare_dictionary(kxi, poincare)
    image = phi.apply_tensor(rmat_k_xi(hopf=kxi).value)
    return compare("poincare_dictionary:rmatrix", image - rmat_poincare(hopf=poincare).value)


""" Superalgebra R-matrices """


def _odd_factor(e, f, coefficient):
    return exp_element(_tensor(e, f).scale(coefficient))


def rmat_d21e(epsilon, order=2, hopf=None):
    """
    Ordered product over the PBW basis E2, E12, E_B, E32, E132, E1, E3 and the Cartan factor
    exp[½ħ(s1 H1⊗H1 + s2 H_B⊗H_B + s3 H3⊗H3)]
    """
    hopf = hopf or build_uq_d21e(epsilon, order)
    algebra = hopf.algebra
    order = algebra.order
    data = d21e_parameters(hopf.parameters['epsilon'], order)
    s1, s2, s3 = data.s
    g = algebra.gen
    # -(q_2 - q_2^-1) with q_2 = e^-ħ
    odd = _q_difference(1, order)
    h_b = h_b_element(algebra, data)
    value = _odd_factor(g('E2'), g('F2'), odd) \
        * _odd_factor(g('E12'), g('F21'), odd) \
        * qexp_element(_tensor(g('E_B'), g('F_B')).scale(_q_difference(s2, order)), -2 * s2) \
        * _odd_factor(g('E32'), g('F23'), odd) \
        * _odd_factor(g('E132'), g('F213'), odd) \
        * qexp_element(_tensor(g('E1'), g('F1')).scale(_q_difference(s1, order)), -2 * s1) \
        * qexp_element(_tensor(g('E3'), g('F3')).scale(_q_difference(s3, order)), -2 * s3) \
        * _cartan_factor(_tensor(g('H1'), g('H1')).scale(s1) + _tensor(h_b, h_b).scale(s2)
                         + _tensor(g('H3'), g('H3')).scale(s3))
    return RMatrixSeries(hopf, value, "R(U_h(d(2,1;eps)))")


def rmat_max_ext(xi=0, order=2, hopf=None):
    """
    Odd factors around the K_xi logarithmic factors, then the E1, E3 q-exponentials and
    exp[½ħ(H1⊗H1 - H3⊗H3 + H_C⊗H_A + H_A⊗H_C + ξH_C⊗H_C)]
    """
    hopf = hopf or build_max_ext_sl22(xi, order)
    algebra = hopf.algebra
    order = algebra.order
    xi = algebra.parameters['xi']
    g = algebra.gen
    odd = _q_difference(1, order)
    h_c = h_c_element(algebra)
    cartan = _tensor(g('H1'), g('H1')) - _tensor(g('H3'), g('H3')) + _tensor(h_c, g('H_A')) \
        + _tensor(g('H_A'), h_c) + _tensor(h_c, h_c).scale(xi)
    value = _odd_factor(g('E2'), g('F2'), odd) \
        * _odd_factor(g('E12'), g('F21'), odd) \
        * contracted_factors(g('E_C'), g('E_A'), g('F_C'), g('F_A'), xi, 4) \
        * _odd_factor(g('E32'), g('F23'), odd) \
        * _odd_factor(g('E132'), g('F213'), odd) \
        * qexp_element(_tensor(g('E1'), g('F1')).scale(odd), -2) \
        * qexp_element(_tensor(g('E3'), g('F3')).scale(-odd), 2) \
        * _cartan_factor(cartan)
    return RMatrixSeries(hopf, value, "R(max-ext sl(2|2))")


""" Checks """


def check_rmatrix_inverse(rmatrix):
    identity = TensorElement.identity(rmatrix.algebra, 2)
    return compare("rmatrix_inverse", rmatrix.value * rmatrix.inverse - identity)


def check_quasi_cocommutativity(rmatrix, generators=None):
    """
    R Δ(g) = Δ^cop(g) R for every generator, with the graded flip
    :param generators: optional subset of generator names
    :return: CheckResult
    """
    hopf = rmatrix.hopf
    names = generators or hopf.algebra.table.names()
    results = []
    for name in names:
        g = hopf.algebra.gen(name)
        residual = rmatrix.value * hopf.delta(g) - hopf.delta_cop(g) * rmatrix.value
        results.append(compare("quasi_cocommutativity:" + name, residual))
    result = merge("quasi_cocommutativity", results)
    result.data.update(_first_failure(results))
    if not result.passed:
        logger.warning("{}: quasi-cocommutativity fails: {}".format(rmatrix.name, result.detail))
    return result


def _first_failure(results):
    """
    Summary fields of the earliest failing part, for the structured R-matrix records
    """
    failing = [r for r in results if not r.passed]
    if not failing:
        return {"first_failing_order": None, "failing_term_count": 0}
    return {
        "first_failing_order": min(r.data.get("first_failing_order") for r in failing),
        "failing_term_count": sum(r.data.get("failing_term_count", 0) for r in failing),
    }


def check_ybe(rmatrix, threads=2):
    """
    R12 R13 R23 = R23 R13 R12
    """
    value = rmatrix.value
    r12 = value.legs((0, 1), 3)
    r13 = value.legs((0, 2), 3)
    r23 = value.legs((1, 2), 3)
    with ThreadPoolExecutor(max_workers=threads) as executor:
        left = executor.submit(lambda: r12 * r13 * r23)
        right = executor.submit(lambda: r23 * r13 * r12)
        residual = left.result() - right.result()
    result = compare("yang_baxter", residual)
    if not result.passed:
        logger.warning("{}: Yang-Baxter fails: {}".format(rmatrix.name, result.detail))
    return result


def check_hexagon(rmatrix):
    """
    (Δ⊗id)R = R13 R23 and (id⊗Δ)R = R13 R12
    """
    hopf = rmatrix.hopf
    value = rmatrix.value
    r12 = value.legs((0, 1), 3)
    r13 = value.legs((0, 2), 3)
    r23 = value.legs((1, 2), 3)
    results = [
        compare("hexagon:left", hopf.delta_slot(value, 0) - r13 * r23),
        compare("hexagon:right", hopf.delta_slot(value, 1) - r13 * r12),
    ]
    result = merge("hexagon", results)
    result.data.update(_first_failure(results))
    return result


def check_momentum_conjugation(rmatrix):
    """
    R^-1 (x) R for x in E_C⊗1, 1⊗F_C, H_C⊗1, 1⊗H_C, F_C⊗1, 1⊗E_C against their closed forms
    in W = q^(H_C)E_C ⊗ q^(-H_C)F_C
    """
    algebra = rmatrix.algebra
    if 'H_C' not in algebra.table:
        return CheckResult("momentum_conjugation", FAIL, "needs the K_xi basis")
    order = algebra.order
    g = algebra.gen
    one = algebra.one()
    e_c, f_c, h_c = g('E_C'), g('F_C'), g('H_C')
    w = _tensor(q_power_element(h_c, 1) * e_c, q_power_element(h_c, -1) * f_c)
    # -log(1 - 4ħ²W)/ħ and 1/(1 - 4ħ²W)
    log_term = polynomial_in(w, [(n, HbarSeries.monomial(Fraction(4 ** n, n), 2 * n - 1, order))
                                 for n in range(1, (order + 1) // 2 + 1)])
    geometric = polynomial_in(w, [(n, HbarSeries.monomial(4 ** n, 2 * n, order)) for n in range(0, order // 2 + 1)])
    identities = {
        'E_C⊗1': (_tensor(e_c, one), _tensor(e_c, q_power_element(h_c, -1))),
        '1⊗F_C': (_tensor(one, f_c), _tensor(q_power_element(h_c, 1), f_c)),
        'H_C⊗1': (_tensor(h_c, one), _tensor(h_c, one) + log_term),
        '1⊗H_C': (_tensor(one, h_c), _tensor(one, h_c) - log_term),
        'F_C⊗1': (_tensor(f_c, one), _tensor(f_c, q_power_element(h_c, 1)) + _tensor(one, f_c)
                  - _tensor(q_power_element(h_c, 2), f_c) * geometric),
        '1⊗E_C': (_tensor(one, e_c), _tensor(q_power_element(h_c, -1), e_c) + _tensor(e_c, one)
                  - _tensor(e_c, q_power_element(h_c, -2)) * geometric),
    }
    results = []
    for name, (x, expected) in sorted(identities.items()):
        conjugated = rmatrix.inverse * x * rmatrix.value
        results.append(compare("momentum_conjugation:" + name, conjugated - expected))
    result = merge("momentum_conjugation", results)
    result.data.update(_first_failure(results))
    if not result.passed:
        logger.warning("momentum conjugation fails: {}".format(result.detail))
    return result


def classical_limit_extract(rmatrix):
    """
    r with R = 1⊗1 + 2ħr + O(ħ²)
    :return: dict (name, name) -> ExactScalar
    """
    if rmatrix.order < 1:
        raise NonlinearFirstOrder("the ħ^1 term is not known at order 0")
    table = rmatrix.algebra.table
    r = {}
    for key, c in rmatrix.value.terms.items():
        value = c.coeffs[1]
        if not value:
            continue
        if [len(w) for w in key] != [1, 1]:
            names = " ⊗ ".join("·".join(table.decode(w)) or "1" for w in key)
            raise NonlinearFirstOrder("ħ^1 term contains {}".format(names))
        r[(table.decode(key[0])[0], table.decode(key[1])[0])] = value / 2
    return r
