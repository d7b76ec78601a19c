from fractions import Fraction

from pyparsing import Combine, Literal, Optional, ParseException, StringEnd, Word, nums, oneOf

from application.errors import ScalarParseError
from application.scalar_series import ExactScalar, HbarSeries

MAX_DIMENSION = 6
MIN_DIMENSION = 2

algebra_ids = {
    "U_h(sl2)": "uq_sl2",
    "U_eh(sl2) x U_e~h(sl2)": "sl2_tensor",
    "K_xi(iso3)": "k_xi_iso3",
    "K_xi(iso3), Poincare basis": "poincare",
    "U_h(d(2,1;eps))": "d21e",
    "max-ext sl(2|2)": "max_ext_sl22",
}
check_references = {
    "confluence": "PBW reduction well defined on all overlaps",
    "coassociativity": "Hopf axiom (Δ⊗id)Δ = (id⊗Δ)Δ",
    "counit": "Hopf axiom (ε⊗id)Δ = id = (id⊗ε)Δ",
    "coproduct_homomorphism": "Δ respects every defining relation",
    "antipode": "Hopf axiom m(S⊗id)Δ = ηε = m(id⊗S)Δ",
    "antipode_antihomomorphism": "S respects every defining relation",
    "quasi_cocommutativity": "R Δ(g) = Δ^cop(g) R",
    "yang_baxter": "R12 R13 R23 = R23 R13 R12",
    "hexagon": "(Δ⊗id)R = R13 R23 and (id⊗Δ)R = R13 R12",
    "momentum_conjugation": "R^-1 (momentum ⊗ 1) R identities",
    "rmatrix_inverse": "R R^-1 = 1⊗1",
    "nonsimple_coproduct_tail": "coproduct tails of the even non-simple generators",
    "serre": "Serre elements vanish",
    "composite_definitions": "non-simple generators equal their defining q-commutators",
    "q_jacobi": "both nestings of the three-root generators agree",
    "even_sl2": "E_B, F_B, H_B satisfy the relations of U_{s2 ħ}(sl2)",
    "even_nonsimple_commutators": "commutators of E_B, F_B with the simple generators",
    "central_extension": "E_C, F_C, H_C commute with the simple generators",
    "central_definition": "E_C and F_C equal the rescaled non-standard Serre elements",
    "momentum_rotation_commutators": "commutators of E_A, F_A with the simple generators",
    "k_xi_sector": "E_A, F_A, H_A, E_C, F_C, H_C span a copy of K_xi(iso3)",
    "contraction": "O(ε) residual of the contracted Hopf structure",
    "centrality": "invariant elements commute with all generators",
    "y_transform": "ξ removed from [E_A,F_A] by the central redefinition",
    "poincare_dictionary": "canonical rotation/momentum basis is a Hopf algebra map",
    "cybe": "[[r,r]] = 0",
    "mcybe": "[[r^,r^]] = ω",
    "casimir": "[[x,x]] = -ω and ad-invariance of x",
    "coboundary": "δ(a) = [a⊗1 + 1⊗a, r]",
    "completion_witness": "symmetric completion of r^_d solving the CYBE",
    "conservation": "conservation laws of the two-particle momentum map",
    "sixth_law_contrast": "energy-preserving alternative conservation law",
    "classical_limit": "O(ħ) term of the R-matrix is 2ħr",
    "jacobi": "structure constants satisfy the Jacobi identity",
    "decomposition": "r splits into its antisymmetric part r^ and the Casimir x",
    "twist_obstruction": "r - 2ξP+∧P- no longer solves the CYBE",
    "classical_rate": "outgoing momenta approach the ingoing ones like 1/κ",
}

""" Exact scalar grammar """


def _term_action(tokens):
    if tokens[0] == 'i':
        return ExactScalar(0, 1)
    value = Fraction(tokens[0])
    if len(tokens) > 1:
        return ExactScalar(0, value)
    return ExactScalar(value)


def _scalar_action(tokens):
    tokens = list(tokens)
    sign = 1
    if tokens[0] in ('+', '-'):
        sign = -1 if tokens.pop(0) == '-' else 1
    value = tokens.pop(0) * sign
    if tokens:
        op, term = tokens
        value = value + term if op == '+' else value - term
    return value


_INTEGER = Word(nums)
_RATIONAL = Combine(_INTEGER + Optional(Literal('/') + _INTEGER))
_UNIT = Literal('i')
_SIGN = oneOf('+ -')
_TERM = (_RATIONAL + Optional(_UNIT) | _UNIT).setParseAction(_term_action)
SCALAR_GRAMMAR = (Optional(_SIGN) + _TERM + Optional(_SIGN + _TERM) + StringEnd()).setParseAction(_scalar_action)


def parse_scalar(text):
    """
    Parses an exact scalar such as "1/3", "-2", "3/5+1/2 i" or "-i"
    :param text: string (ints are accepted as well)
    :return: ExactScalar
    """
    if isinstance(text, ExactScalar):
        return text
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise ScalarParseError("not an exact scalar: {!r}".format(text))
    try:
        return SCALAR_GRAMMAR.parseString(str(text).strip())[0]
    except (ParseException, ZeroDivisionError) as e:
        raise ScalarParseError("not an exact scalar: {!r} ({})".format(text, e))


def format_scalar(value):
    return str(ExactScalar.of(value))


def parse_series(values, order):
    """
    Builds an HbarSeries from a list of scalar strings, one per ħ-order
    :param values: list of strings
    :param order: truncation order
    :return: HbarSeries
    """
    return HbarSeries([parse_scalar(v) for v in values][:order + 1], order)


def format_series(series):
    coeffs = list(series.coeffs)
    while len(coeffs) > 1 and not coeffs[-1]:
        coeffs.pop()
    return [format_scalar(c) for c in coeffs]


def check_value(array, value):
    """
    Checks if a value exists in a map
    :param array: the input map
    :param value: the searched key
    :return: the stored value or "x"
    """
    if value in array:
        return array[value]
    else:
        return "x"
