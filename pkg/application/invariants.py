from fractions import Fraction
from math import comb, factorial

from application.algebra_core import graded_commutator, hbar_function
from application.message_logger import MessageLogger
from application.reports import FAIL, CheckResult, compare, merge
from application.scalar_series import I, HbarSeries

logger = MessageLogger('invariants').get_logger()


def _is_poincare(hopf):
    return 'P_0' in hopf.algebra.table


def invariant_X(hopf):
    """
    Momentum invariant: E_C F_C + (q^(H_C/2) - q^(-H_C/2))²/4ħ², or 4P_+P_- + (q^(iP_0) - q^(-iP_0))²/4ħ²
    """
    algebra = hopf.algebra
    if _is_poincare(hopf):
        # (q^(iP_0) - q^(-iP_0))² / 4ħ² = (cosh(2iħP_0) - 1) / 2ħ²
        p_0 = algebra.gen('P_0')
        return (algebra.gen('P_p') * algebra.gen('P_m')).scale(4) \
            + hbar_function('cosh-1', p_0, I * 2, 2).scale(Fraction(1, 2))
    h_c = algebra.gen('H_C')
    return algebra.gen('E_C') * algebra.gen('F_C') + hbar_function('cosh-1', h_c, 1, 2).scale(Fraction(1, 2))


def invariant_Xtilde(hopf):
    """
    Spin invariant whose classical limit is 2P_μL^μ
    """
    algebra = hopf.algebra
    xi = hopf.parameters['xi']
    if _is_poincare(hopf):
        p_p, l_p, p_0, l_0, p_m, l_m = (algebra.gen(n) for n in ('P_p', 'L_p', 'P_0', 'L_0', 'P_m', 'L_m'))
        # (i/2ħ)(q^(2iP_0) - q^(-2iP_0)) = i sinh(2iħP_0)/ħ
        # (ξ/2ħ²)(q^(iP_0) - q^(-iP_0))² = ξ (cosh(2iħP_0) - 1)/ħ²
        return (p_p * l_m + p_m * l_p).scale(4) \
            + (hbar_function('sinh', p_0, I * 2, 1) * (l_0 + p_0.scale(xi))).scale(I) \
            - hbar_function('cosh-1', p_0, I * 2, 2).scale(xi)
    e_c, e_a, h_c, h_a, f_c, f_a = (algebra.gen(n) for n in ('E_C', 'E_A', 'H_C', 'H_A', 'F_C', 'F_A'))
    # (2ξ/ħ²) sinh²(ħH_C/2) = ξ (cosh(ħH_C) - 1)/ħ²
    return e_c * f_a + f_c * e_a \
        + (hbar_function('sinh', h_c, 1, 1) * (h_a + h_c.scale(xi))).scale(Fraction(1, 2)) \
        - hbar_function('cosh-1', h_c, 1, 2).scale(xi)


def check_centrality(hopf, x, name="centrality"):
    """
    [x, g] = 0 for every generator g
    """
    algebra = hopf.algebra
    results = [compare("{}:{}".format(name, n), graded_commutator(x, algebra.gen(n))) for n in algebra.table.names()]
    result = merge(name, results)
    if not result.passed:
        logger.warning("{} is not central: {}".format(name, result.detail))
    return result


""" ξ-removing redefinition """


def _g_coefficients(count):
    """
    Taylor coefficients g_1..g_count of g(w) = sqrt(w) sqrt(1+w) arsinh(sqrt(w))
    """
    # sqrt(w) arsinh(sqrt(w)) = sum_n a_n w^(n+1)
    a = [Fraction((-1) ** n * factorial(2 * n), 4 ** n * factorial(n) ** 2 * (2 * n + 1)) for n in range(count)]
    # sqrt(1+w) = sum_k b_k w^k
    b = [Fraction(1)]
    for k in range(1, count):
        b.append(b[-1] * (Fraction(1, 2) - (k - 1)) / k)
    return [sum(a[n] * b[m - 1 - n] for n in range(m)) for m in range(1, count + 1)]


def y_element(hopf):
    """
    Y = (g(s + u) - g(s))/u - 1 with s = sinh²(ħH_C/2), u = ħ² E_C F_C and g as in _g_coefficients;
    starts as (ħ²/3)(E_C F_C + H_C²/2)
    """
    algebra = hopf.algebra
    order = algebra.order
    h_c = algebra.gen('H_C')
    s = hbar_function('cosh-1', h_c, 1).scale(Fraction(1, 2))
    u = (algebra.gen('E_C') * algebra.gen('F_C')).scale(HbarSeries.monomial(1, 2, order))
    count = order // 2 + 1
    g = _g_coefficients(count)
    s_powers = [algebra.one()]
    u_powers = [algebra.one()]
    for _ in range(count):
        s_powers.append(s_powers[-1] * s)
        u_powers.append(u_powers[-1] * u)
    result = algebra.scalar(-1)
    for m in range(1, count + 1):
        for j in range(1, m + 1):
            result = result + (s_powers[m - j] * u_powers[j - 1]).scale(g[m - 1] * comb(m, j))
    return result


def y_transform_check(hopf):
    """
    E'_A = E_A - ξY E_C and F'_A = F_A - ξY F_C satisfy [E'_A, F'_A] = cosh(ħH_C) H_A
    """
    algebra = hopf.algebra
    xi = hopf.parameters['xi']
    if _is_poincare(hopf):
        return CheckResult("y_transform", FAIL, "needs the K_xi basis")
    y = y_element(hopf)
    e_a = algebra.gen('E_A') - (y * algebra.gen('E_C')).scale(xi)
    f_a = algebra.gen('F_A') - (y * algebra.gen('F_C')).scale(xi)
    expected = hbar_function('cosh', algebra.gen('H_C'), 1) * algebra.gen('H_A')
    result = compare("y_transform", graded_commutator(e_a, f_a) - expected,
                     "ξ removed from [E_A, F_A] up to ħ^{}".format(algebra.order))
    return result
