import math
from fractions import Fraction
from itertools import permutations

from application.errors import DegenerateParameter, RankMismatch, UnknownGenerator
from application.message_logger import MessageLogger
from application.reports import FAIL, PASS, CheckResult, merge
from application.rmatrix import classical_limit_extract, rmat_k_xi, rmat_poincare
from application.scalar_series import I, ONE, ZERO, ExactScalar
from utilities.utils import MAX_DIMENSION, MIN_DIMENSION

logger = MessageLogger('classical_limit').get_logger()


def _accumulate(terms, key, value):
    if not value:
        return
    total = terms[key] + value if key in terms else value
    if total:
        terms[key] = total
    else:
        del terms[key]


def permutation_sign(p):
    sign = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def metric(d):
    """
    η = diag(-1, 1, ..., 1), its own inverse
    """
    return [-1] + [1] * (d - 1)


""" Lie algebras """


class LieAlgebraSC:
    """
    Finite dimensional Lie algebra given by structure constants [e_a, e_b] = f_ab^c e_c
    """

    def __init__(self, name, labels, brackets):
        """
        Class constructor
        :param name: display name
        :param labels: basis labels
        :param brackets: dict (label, label) -> {label: scalar}; the opposite order is filled in
        """
        self.name = name
        self.labels = tuple(labels)
        self.__index = {label: k for k, label in enumerate(self.labels)}
        self.constants = {}
        for (a, b), image in brackets.items():
            i, j = self.index(a), self.index(b)
            value = {}
            for c, s in image.items():
                _accumulate(value, self.index(c), ExactScalar.of(s))
            if value:
                self.constants[(i, j)] = value
                self.constants[(j, i)] = {c: -s for c, s in value.items()}

    @property
    def dim(self):
        return len(self.labels)

    def index(self, label):
        try:
            return self.__index[label]
        except KeyError:
            raise UnknownGenerator("{} has no basis element {}".format(self.name, label)) from None

    def basis(self, label):
        return WedgeTensor(self, 1, {(self.index(label),): ONE})

    def vector(self, coefficients):
        """
        :param coefficients: dict label -> scalar
        """
        terms = {}
        for label, c in coefficients.items():
            _accumulate(terms, (self.index(label),), ExactScalar.of(c))
        return WedgeTensor(self, 1, terms)

    def bracket_indices(self, a, b):
        return self.constants.get((a, b), {})

    def bracket(self, u, v):
        terms = {}
        for (a,), x in u.components.items():
            for (b,), y in v.components.items():
                for c, s in self.bracket_indices(a, b).items():
                    _accumulate(terms, (c,), x * y * s)
        return WedgeTensor(self, 1, terms)

    def check_jacobi(self):
        """
        [a,[b,c]] + [b,[c,a]] + [c,[a,b]] = 0 on every triple of basis elements
        """
        failures = 0
        for a in range(self.dim):
            for b in range(a + 1, self.dim):
                for c in range(b + 1, self.dim):
                    u, v, w = (WedgeTensor(self, 1, {(k,): ONE}) for k in (a, b, c))
                    total = self.bracket(u, self.bracket(v, w)) + self.bracket(v, self.bracket(w, u)) \
                        + self.bracket(w, self.bracket(u, v))
                    if not total.is_zero():
                        failures += 1
        return _status("jacobi:" + self.name, failures)

    def change_basis(self, matrix, inverse, labels=None):
        """
        Structure constants in the basis f_a = Σ_b matrix[a][b] e_b
        :param inverse: inverse matrix, e_a = Σ_b inverse[a][b] f_b
        """
        n = self.dim
        for i in range(n):
            for j in range(n):
                entry = sum((ExactScalar.of(matrix[i][k]) * inverse[k][j] for k in range(n)), ZERO)
                if entry != (ONE if i == j else ZERO):
                    raise DegenerateParameter("matrix and inverse do not multiply to the identity")
        labels = labels or tuple(label + "'" for label in self.labels)
        brackets = {}
        for a in range(n):
            for b in range(a + 1, n):
                image = {}
                for c in range(n):
                    for d in range(n):
                        weight = ExactScalar.of(matrix[a][c]) * matrix[b][d]
                        if not weight:
                            continue
                        for e, s in self.bracket_indices(c, d).items():
                            for g in range(n):
                                _accumulate(image, labels[g], weight * s * inverse[e][g])
                brackets[(labels[a], labels[b])] = image
        return LieAlgebraSC(self.name + "'", labels, brackets)

    def __repr__(self):
        return "LieAlgebraSC({}, dim {})".format(self.name, self.dim)


class WedgeTensor:
    """
    Rank k element of g^{⊗k} stored by basis index tuples
    """

    __slots__ = ('algebra', 'rank', 'components')

    def __init__(self, algebra, rank, components=None):
        self.algebra = algebra
        self.rank = rank
        self.components = components or {}

    @classmethod
    def product(cls, *vectors):
        terms = {(): ONE}
        for v in vectors:
            terms = {k + key: c * x for k, c in terms.items() for key, x in v.components.items()}
        result = {}
        for k, c in terms.items():
            _accumulate(result, k, c)
        return cls(vectors[0].algebra, sum(v.rank for v in vectors), result)

    def __add__(self, other):
        if other.rank != self.rank:
            raise RankMismatch("cannot add rank {} and rank {}".format(self.rank, other.rank))
        terms = dict(self.components)
        for k, c in other.components.items():
            _accumulate(terms, k, c)
        return WedgeTensor(self.algebra, self.rank, terms)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, value):
        value = ExactScalar.of(value)
        if not value:
            return WedgeTensor(self.algebra, self.rank)
        return WedgeTensor(self.algebra, self.rank, {k: c * value for k, c in self.components.items()})

    def is_zero(self):
        return not self.components

    def __eq__(self, other):
        if not isinstance(other, WedgeTensor):
            return NotImplemented
        return self.rank == other.rank and (self - other).is_zero()

    def permute(self, order):
        """
        Slot k of the result holds slot order[k] of this tensor
        """
        terms = {}
        for key, c in self.components.items():
            _accumulate(terms, tuple(key[k] for k in order), c)
        return WedgeTensor(self.algebra, self.rank, terms)

    def flip(self):
        return self.permute((1, 0))

    def is_antisymmetric(self):
        return all((self - self.permute(p).scale(permutation_sign(p))).is_zero()
                   for p in permutations(range(self.rank)))

    def is_symmetric(self):
        return all(self == self.permute(p) for p in permutations(range(self.rank)))

    def antisymmetric_part(self):
        return (self - self.flip()).scale(Fraction(1, 2))

    def symmetric_part(self):
        return (self + self.flip()).scale(Fraction(1, 2))

    def transform(self, inverse, algebra):
        """
        Components in the basis of algebra, given e_a = Σ_b inverse[a][b] f_b
        """
        result = {}
        for key, c in self.components.items():
            expanded = {(): c}
            for a in key:
                expanded = {k + (b,): s * inverse[a][b] for k, s in expanded.items()
                            for b in range(len(inverse)) if inverse[a][b]}
            for k, s in expanded.items():
                _accumulate(result, k, s)
        return WedgeTensor(algebra, self.rank, result)

    def to_dict(self):
        labels = self.algebra.labels
        return {
            "rank": self.rank,
            "components": [{"basis": [labels[a] for a in key], "coefficient": str(c)}
                           for key, c in sorted(self.components.items())],
        }

    def __str__(self):
        if not self.components:
            return "0"
        labels = self.algebra.labels
        return " + ".join("({})·{}".format(c, "⊗".join(labels[a] for a in key))
                          for key, c in sorted(self.components.items()))

    def __repr__(self):
        return "WedgeTensor(rank {}, {} components)".format(self.rank, len(self.components))


def wedge(a, b):
    return WedgeTensor.product(a, b) - WedgeTensor.product(b, a)


def sym(a, b):
    return WedgeTensor.product(a, b) + WedgeTensor.product(b, a)


def wedge3(a, b, c):
    factors = (a, b, c)
    result = WedgeTensor(a.algebra, 3)
    for p in permutations(range(3)):
        result = result + WedgeTensor.product(*(factors[k] for k in p)).scale(permutation_sign(p))
    return result


def ad_action(x, t):
    """
    [x⊗1⊗...⊗1 + ... + 1⊗...⊗1⊗x, t] for a vector x
    """
    algebra = t.algebra
    terms = {}
    for (a,), s in x.components.items():
        for key, c in t.components.items():
            for slot, b in enumerate(key):
                for e, f in algebra.bracket_indices(a, b).items():
                    _accumulate(terms, key[:slot] + (e,) + key[slot + 1:], s * c * f)
    return WedgeTensor(algebra, t.rank, terms)


def schouten_bracket(r1, r2):
    """
    [[r1, r2]] = [r1_12, r2_13] + [r1_12, r2_23] + [r1_13, r2_23]
    """
    algebra = r1.algebra
    terms = {}
    for (a, b), x in r1.components.items():
        for (c, d), y in r2.components.items():
            xy = x * y
            for e, f in algebra.bracket_indices(a, c).items():
                _accumulate(terms, (e, b, d), xy * f)
            for e, f in algebra.bracket_indices(b, c).items():
                _accumulate(terms, (a, e, d), xy * f)
            for e, f in algebra.bracket_indices(b, d).items():
                _accumulate(terms, (a, c, e), xy * f)
    return WedgeTensor(algebra, 3, terms)


def _status(name, failures, detail_pass="exact", data=None):
    if not failures:
        return CheckResult(name, PASS, detail_pass, data=data or {})
    return CheckResult(name, FAIL, "{} failing components".format(failures), data=data or {})


def _tensor_check(name, residual):
    if not residual.is_zero():
        logger.warning("{} fails with {} components".format(name, len(residual.components)))
    return _status(name, len(residual.components))


""" 3D Poincaré algebra """


def levi_civita(mu, nu, rho):
    """
    ε_{μνρ} with ε_{012} = 1
    """
    if len({mu, nu, rho}) < 3:
        return 0
    return permutation_sign((mu, nu, rho))


def levi_civita_upper(mu, nu, rho):
    eta = metric(3)
    return eta[mu] * eta[nu] * eta[rho] * levi_civita(mu, nu, rho)


def build_iso3():
    """
    [L_μ, L_ν] = ε_μν^ρ L_ρ, [L_μ, P_ν] = ε_μν^ρ P_ρ, [P_μ, P_ν] = 0
    """
    eta = metric(3)
    brackets = {}
    for mu in range(3):
        for nu in range(3):
            rho = 3 - mu - nu
            if mu == nu:
                continue
            value = levi_civita(mu, nu, rho) * eta[rho]
            brackets[('L{}'.format(mu), 'P{}'.format(nu))] = {'P{}'.format(rho): value}
            if mu < nu:
                brackets[('L{}'.format(mu), 'L{}'.format(nu))] = {'L{}'.format(rho): value}
    return LieAlgebraSC("iso(3)", ('P0', 'P1', 'P2', 'L0', 'L1', 'L2'), brackets)


def poincare_vectors(g):
    """
    P_0, L_0 and P_± = (P_1 ± iP_2)/2, L_± = (L_1 ± iL_2)/2
    """
    half = Fraction(1, 2)
    half_i = I * half
    return {
        'P_0': g.basis('P0'),
        'L_0': g.basis('L0'),
        'P_p': g.vector({'P1': half, 'P2': half_i}),
        'P_m': g.vector({'P1': half, 'P2': -half_i}),
        'L_p': g.vector({'L1': half, 'L2': half_i}),
        'L_m': g.vector({'L1': half, 'L2': -half_i}),
    }


def build_casimir_x(xi=0, g=None):
    """
    x = P_μ⊙L^μ + ½ξ P_μ⊙P^μ
    """
    g = g or build_iso3()
    xi = ExactScalar.of(xi)
    eta = metric(3)
    x = WedgeTensor(g, 2)
    for mu in range(3):
        p, l_ = g.basis('P{}'.format(mu)), g.basis('L{}'.format(mu))
        x = x + (sym(p, l_) + sym(p, p).scale(xi / 2)).scale(eta[mu])
    return x


def build_rhat(xi=0, g=None):
    """
    r^ = 2(P_+∧L_- - P_-∧L_+ + ξP_+∧P_-)
    """
    g = g or build_iso3()
    v = poincare_vectors(g)
    return (wedge(v['P_p'], v['L_m']) - wedge(v['P_m'], v['L_p'])
            + wedge(v['P_p'], v['P_m']).scale(xi)).scale(2)


def build_classical_r(xi=0, g=None):
    g = g or build_iso3()
    return build_rhat(xi, g) + build_casimir_x(xi, g)


def build_omega(xi=0, g=None):
    """
    ω = -½ ε^{μνρ}(P_μ∧P_ν∧L_ρ + ⅔ξ P_μ∧P_ν∧P_ρ)
    """
    g = g or build_iso3()
    xi = ExactScalar.of(xi)
    omega = WedgeTensor(g, 3)
    for mu, nu, rho in permutations(range(3)):
        p_mu, p_nu = g.basis('P{}'.format(mu)), g.basis('P{}'.format(nu))
        term = wedge3(p_mu, p_nu, g.basis('L{}'.format(rho))) \
            + wedge3(p_mu, p_nu, g.basis('P{}'.format(rho))).scale(xi * Fraction(2, 3))
        omega = omega + term.scale(levi_civita_upper(mu, nu, rho))
    return omega.scale(Fraction(-1, 2))


COBRACKET_NAMES = ('P_p', 'L_p', 'P_0', 'L_0', 'P_m', 'L_m')


def cobracket(name, xi=0, g=None):
    """
    δ(a) = [a⊗1 + 1⊗a, r]
    """
    g = g or build_iso3()
    vectors = poincare_vectors(g)
    if name not in vectors:
        raise UnknownGenerator("no Poincaré generator {}".format(name))
    return ad_action(vectors[name], build_classical_r(xi, g))


def tabulated_cobracket(name, xi=0, g=None):
    """
    δ(P_0) = δ(L_0) = 0, δ(P_±) = iP_±∧P_0, δ(L_±) = iL_±∧P_0 + iP_±∧(L_0 + ξP_0)
    """
    g = g or build_iso3()
    v = poincare_vectors(g)
    if name in ('P_0', 'L_0'):
        return WedgeTensor(g, 2)
    sign = name[-1]
    if name.startswith('P'):
        return wedge(v['P_' + sign], v['P_0']).scale(I)
    return (wedge(v['L_' + sign], v['P_0']) + wedge(v['P_' + sign], v['L_0'] + v['P_0'].scale(xi))).scale(I)


def check_coboundary(xi=0):
    g = build_iso3()
    results = [_tensor_check("coboundary:" + name, cobracket(name, xi, g) - tabulated_cobracket(name, xi, g))
               for name in COBRACKET_NAMES]
    return merge("coboundary", results)


def check_cybe(xi=0):
    r = build_classical_r(xi)
    return _tensor_check("cybe", schouten_bracket(r, r))


def check_mcybe(xi=0):
    g = build_iso3()
    rhat = build_rhat(xi, g)
    return _tensor_check("mcybe", schouten_bracket(rhat, rhat) - build_omega(xi, g))


def check_casimir(xi=0):
    """
    x is ad-invariant, symmetric, and [[x, x]] = -ω
    """
    g = build_iso3()
    x = build_casimir_x(xi, g)
    results = [_tensor_check("casimir:ad_" + label, ad_action(g.basis(label), x)) for label in g.labels]
    results.append(_tensor_check("casimir:schouten", schouten_bracket(x, x) + build_omega(xi, g)))
    results.append(_status("casimir:symmetric", 0 if x.is_symmetric() else 1))
    return merge("casimir", results)


def check_decomposition(xi=0):
    """
    r = r^ + x with r^ the antisymmetric and x the symmetric part
    """
    g = build_iso3()
    r = build_classical_r(xi, g)
    results = [
        _tensor_check("decomposition:antisymmetric", r.antisymmetric_part() - build_rhat(xi, g)),
        _tensor_check("decomposition:symmetric", r.symmetric_part() - build_casimir_x(xi, g)),
    ]
    return merge("decomposition", results)


def check_twist_obstruction(xi):
    """
    r - 2ξP_+∧P_- fails the CYBE for ξ != 0, so the ξ-term is not a twist of the ξ = 0 solution
    """
    g = build_iso3()
    v = poincare_vectors(g)
    shifted = build_classical_r(xi, g) - wedge(v['P_p'], v['P_m']).scale(ExactScalar.of(xi) * 2)
    residual = schouten_bracket(shifted, shifted)
    data = {"residual_components": len(residual.components)}
    if not ExactScalar.of(xi):
        return _status("twist_obstruction", len(residual.components), "ξ = 0, nothing removed", data)
    if residual.is_zero():
        return CheckResult("twist_obstruction", FAIL, "r - 2ξP+∧P- solves the CYBE", data=data)
    return CheckResult("twist_obstruction", PASS, "CYBE fails once the ξ-term is removed", data=data)


def check_classical_suite(xi=0):
    """
    Every 3D identity at one value of ξ
    """
    g = build_iso3()
    results = [g.check_jacobi(), check_cybe(xi), check_mcybe(xi), check_casimir(xi), check_coboundary(xi),
               check_decomposition(xi), check_classical_limit(xi)]
    if ExactScalar.of(xi):
        results.append(check_twist_obstruction(xi))
    return sorted(results, key=lambda r: r.name)


""" Poincaré algebra in d dimensions """


def _rotation_label(mu, nu):
    return 'L{}{}'.format(mu, nu)


def build_isod(d):
    """
    P_μ and L~_μν (μ < ν) with [L~_μν, P_ρ] = η_νρ P_μ - η_μρ P_ν and
    [L~_μν, L~_ρσ] = η_νρ L~_μσ - η_μρ L~_νσ - η_νσ L~_μρ + η_μσ L~_νρ
    """
    if not MIN_DIMENSION <= d <= MAX_DIMENSION:
        raise DegenerateParameter("dimension must lie in {}..{}, got {}".format(MIN_DIMENSION, MAX_DIMENSION, d))
    eta = metric(d)
    labels = ['P{}'.format(mu) for mu in range(d)]
    pairs = [(mu, nu) for mu in range(d) for nu in range(mu + 1, d)]
    labels.extend(_rotation_label(mu, nu) for mu, nu in pairs)

    def rotation(image, mu, nu, value):
        if mu == nu or not value:
            return
        if mu > nu:
            mu, nu, value = nu, mu, -value
        label = _rotation_label(mu, nu)
        image[label] = image.get(label, 0) + value

    def delta(a, b):
        return eta[a] if a == b else 0

    brackets = {}
    for mu, nu in pairs:
        for rho in range(d):
            image = {}
            if delta(nu, rho):
                image['P{}'.format(mu)] = delta(nu, rho)
            if delta(mu, rho):
                image['P{}'.format(nu)] = -delta(mu, rho)
            brackets[(_rotation_label(mu, nu), 'P{}'.format(rho))] = image
        for rho, sigma in pairs:
            if (rho, sigma) <= (mu, nu):
                continue
            image = {}
            rotation(image, mu, sigma, delta(nu, rho))
            rotation(image, nu, sigma, -delta(mu, rho))
            rotation(image, mu, rho, -delta(nu, sigma))
            rotation(image, nu, rho, delta(mu, sigma))
            brackets[(_rotation_label(mu, nu), _rotation_label(rho, sigma))] = image
    return LieAlgebraSC("iso({})".format(d), labels, brackets)


def rotation_upper(g, d, mu, nu):
    """
    L~^{μν} as a vector, zero for μ = ν
    """
    eta = metric(d)
    if mu == nu:
        return WedgeTensor(g, 1)
    sign = eta[mu] * eta[nu]
    if mu > nu:
        mu, nu, sign = nu, mu, -sign
    return g.basis(_rotation_label(mu, nu)).scale(sign)


def default_n(d):
    """
    Contravariant components n^μ = (-i, 0, ..., 0)
    """
    return [-I] + [ZERO] * (d - 1)


def _lower(n, d):
    eta = metric(d)
    return [ExactScalar.of(x) * eta[mu] for mu, x in enumerate(n)]


def n_squared(n, d):
    return sum((ExactScalar.of(a) * b for a, b in zip(n, _lower(n, d))), ZERO)


def _check_n(d, n):
    n = default_n(d) if n is None else [ExactScalar.of(x) for x in n]
    if len(n) != d:
        raise DegenerateParameter("n needs {} components, got {}".format(d, len(n)))
    return n


def build_rhat_d(d, n=None, g=None):
    """
    r^_d = n_μ P_ν∧L~^{μν}
    """
    g = g or build_isod(d)
    n = _check_n(d, n)
    lower = _lower(n, d)
    rhat = WedgeTensor(g, 2)
    for mu in range(d):
        if not lower[mu]:
            continue
        for nu in range(d):
            rhat = rhat + wedge(g.basis('P{}'.format(nu)), rotation_upper(g, d, mu, nu)).scale(lower[mu])
    return rhat


def build_omega_d(d, n=None, g=None):
    """
    ω_d = -½ n² P_μ∧P_ν∧L~^{μν}
    """
    g = g or build_isod(d)
    n = _check_n(d, n)
    omega = WedgeTensor(g, 3)
    for mu in range(d):
        for nu in range(d):
            if mu != nu:
                omega = omega + wedge3(g.basis('P{}'.format(mu)), g.basis('P{}'.format(nu)),
                                       rotation_upper(g, d, mu, nu))
    return omega.scale(n_squared(n, d) * Fraction(-1, 2))


def build_casimir_x_d(d, g=None):
    """
    x_d = P_μ⊙P^μ
    """
    g = g or build_isod(d)
    eta = metric(d)
    x = WedgeTensor(g, 2)
    for mu in range(d):
        p = g.basis('P{}'.format(mu))
        x = x + sym(p, p).scale(eta[mu])
    return x


def check_mcybe_d(d, n=None):
    g = build_isod(d)
    rhat = build_rhat_d(d, n, g)
    return _tensor_check("mcybe:d={}".format(d), schouten_bracket(rhat, rhat) - build_omega_d(d, n, g))


def cobracket_d(d, n, label, g=None):
    """
    δ(a) = [a⊗1 + 1⊗a, r^_d] for a basis label of iso(d)
    """
    g = g or build_isod(d)
    return ad_action(g.basis(label), build_rhat_d(d, n, g))


def tabulated_cobracket_d(d, n, label, g=None):
    """
    δ(P_μ) = n^ν P_ν∧P_μ and δ(L~_μν) = n_μ L~_νρ∧P^ρ - n_ν L~_μρ∧P^ρ for contravariant n^μ
    """
    g = g or build_isod(d)
    n = _check_n(d, n)
    lower = _lower(n, d)
    eta = metric(d)
    result = WedgeTensor(g, 2)
    if label.startswith('P'):
        p_mu = g.basis(label)
        for nu in range(d):
            result = result + wedge(g.basis('P{}'.format(nu)), p_mu).scale(n[nu])
        return result
    mu, nu = int(label[1]), int(label[2])
    for rho in range(d):
        p_upper = g.basis('P{}'.format(rho)).scale(eta[rho])
        result = result + wedge(_rotation_lower(g, nu, rho), p_upper).scale(lower[mu]) \
            - wedge(_rotation_lower(g, mu, rho), p_upper).scale(lower[nu])
    return result


def _rotation_lower(g, mu, nu):
    if mu == nu:
        return WedgeTensor(g, 1)
    if mu > nu:
        return g.basis(_rotation_label(nu, mu)).scale(-1)
    return g.basis(_rotation_label(mu, nu))


def check_cobracket_d(d, n=None):
    g = build_isod(d)
    results = [_tensor_check("coboundary:" + label, cobracket_d(d, n, label, g) - tabulated_cobracket_d(d, n, label, g))
               for label in g.labels]
    return merge("coboundary:d={}".format(d), results)


def check_casimir_d(d):
    g = build_isod(d)
    x = build_casimir_x_d(d, g)
    results = [_tensor_check("casimir:ad_" + label, ad_action(g.basis(label), x)) for label in g.labels]
    return merge("casimir:d={}".format(d), results)


def casimir_span(d, g=None):
    """
    Quadratic Casimirs: P_μ⊙P^μ, and for d = 3 also ε^{ρμν} P_ρ⊙L~_μν
    """
    g = g or build_isod(d)
    span = [build_casimir_x_d(d, g)]
    if d == 3:
        pl = WedgeTensor(g, 2)
        for rho, mu, nu in permutations(range(3)):
            pl = pl + sym(g.basis('P{}'.format(rho)), _rotation_lower(g, mu, nu)).scale(levi_civita_upper(rho, mu, nu))
        span.insert(0, pl)
    return span


""" Symmetric completion """


def _sqrt_fraction(x):
    if x < 0:
        return None
    num, den = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if num * num == x.numerator and den * den == x.denominator:
        return Fraction(num, den)
    return None


def exact_sqrt(z):
    """
    Square root in the Gaussian rationals, None when there is none
    """
    z = ExactScalar.of(z)
    if not z.im:
        root = _sqrt_fraction(z.re)
        if root is not None:
            return ExactScalar(root)
        root = _sqrt_fraction(-z.re)
        return None if root is None else ExactScalar(0, root)
    modulus = _sqrt_fraction(z.re * z.re + z.im * z.im)
    if modulus is None:
        return None
    p = _sqrt_fraction((z.re + modulus) / 2)
    if not p:
        return None
    return ExactScalar(p, z.im / (2 * p))


def solve_linear(columns, rhs):
    """
    Exact Gaussian elimination for Σ_k u_k columns[k] = rhs over component dictionaries
    :return: list of values with free unknowns set to 0, or None when inconsistent
    """
    keys = sorted(set(rhs).union(*(c.keys() for c in columns)))
    rows = [[c.get(key, ZERO) for c in columns] + [rhs.get(key, ZERO)] for key in keys]
    width = len(columns)
    pivots = []
    row = 0
    for col in range(width):
        pivot = next((r for r in range(row, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[row], rows[pivot] = rows[pivot], rows[row]
        inverse = ONE / rows[row][col]
        rows[row] = [x * inverse for x in rows[row]]
        for r in range(len(rows)):
            if r != row and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[row])]
        pivots.append(col)
        row += 1
    if any(r[width] for r in rows[row:]):
        return None
    values = [ZERO] * width
    for r, col in enumerate(pivots):
        values[col] = rows[r][width]
    return values


def completion_witness(rhat, casimirs):
    """
    Looks for s = Σ c_i C_i with [[r^ + s, r^ + s]] = 0, treating every c_i c_j and c_i as a linear unknown
    :return: list of coefficients, or None when the linear system is inconsistent or no exact root exists
    """
    k = len(casimirs)
    columns = []
    monomials = []
    for i in range(k):
        cross = schouten_bracket(rhat, casimirs[i]) + schouten_bracket(casimirs[i], rhat)
        columns.append(cross.components)
        monomials.append((i,))
    for i in range(k):
        for j in range(i, k):
            square = schouten_bracket(casimirs[i], casimirs[j])
            if i != j:
                square = square + schouten_bracket(casimirs[j], casimirs[i])
            columns.append(square.components)
            monomials.append((i, j))
    rhs = (-schouten_bracket(rhat, rhat)).components
    values = solve_linear(columns, rhs)
    if values is None:
        return None
    solved = dict(zip(monomials, values))
    coefficients = [None] * k
    for i in range(k):
        if any(columns[i].values()):
            coefficients[i] = solved[(i,)]
    for i in range(k):
        if coefficients[i] is None and solved[(i, i)]:
            coefficients[i] = exact_sqrt(solved[(i, i)])
            if coefficients[i] is None:
                return None
    for i in range(k):
        if coefficients[i] is None:
            partner = next((j for j in range(k) if coefficients[j]), None)
            key = (min(i, partner), max(i, partner)) if partner is not None else None
            coefficients[i] = solved[key] / coefficients[partner] if key else ZERO
    s = WedgeTensor(rhat.algebra, 2)
    for c, casimir in zip(coefficients, casimirs):
        s = s + casimir.scale(c)
    total = rhat + s
    if not schouten_bracket(total, total).is_zero():
        return None
    return coefficients


def check_no_quasitriangular_completion_witness(d, n=None):
    """
    A symmetric ad-invariant completion of r^_d exists for d = 3 only
    """
    g = build_isod(d)
    n = _check_n(d, n)
    rhat = build_rhat_d(d, n, g)
    coefficients = completion_witness(rhat, casimir_span(d, g))
    solvable = coefficients is not None
    data = {"dimension": d, "solvable": solvable, "n_squared": str(n_squared(n, d))}
    if solvable:
        data["coefficients"] = [str(c) for c in coefficients]
        detail = "symmetric completion " + ", ".join(data["coefficients"])
    else:
        detail = "no symmetric completion"
    expected = d == 3 or not n_squared(n, d)
    logger.info("completion witness at d = {}: {}".format(d, detail))
    return CheckResult("completion_witness:d={}".format(d), PASS if solvable == expected else FAIL, detail, data=data)


def check_rhat_completion(xi=0):
    """
    The 3D completion of r^(ξ) inside span{P_μ⊙L^μ, P_μ⊙P^μ} is ±x
    """
    g = build_iso3()
    eta = metric(3)
    pl = WedgeTensor(g, 2)
    pp = WedgeTensor(g, 2)
    for mu in range(3):
        p = g.basis('P{}'.format(mu))
        pl = pl + sym(p, g.basis('L{}'.format(mu))).scale(eta[mu])
        pp = pp + sym(p, p).scale(eta[mu])
    coefficients = completion_witness(build_rhat(xi, g), [pl, pp])
    if coefficients is None:
        return CheckResult("completion_witness:xi", FAIL, "no completion found")
    sign = coefficients[0]
    s = pl.scale(coefficients[0]) + pp.scale(coefficients[1])
    matches = s == build_casimir_x(xi, g).scale(sign)
    return CheckResult("completion_witness:xi", PASS if matches and sign in (ONE, -ONE) else FAIL,
                       "s = {}·x".format(sign), data={"coefficients": [str(c) for c in coefficients]})


def check_classical_d(d, n=None):
    results = [build_isod(d).check_jacobi(), check_mcybe_d(d, n), check_cobracket_d(d, n), check_casimir_d(d),
               check_no_quasitriangular_completion_witness(d, n)]
    return sorted(results, key=lambda r: r.name)


""" Cross-check with the R-matrix """

K_XI_IMAGES = {
    'E_C': ('P_p', 2), 'E_A': ('L_p', 2), 'F_C': ('P_m', 2), 'F_A': ('L_m', 2), 'H_C': ('P_0', 2 * I),
    'H_A': ('L_0', 2 * I),
}
POINCARE_IMAGES = {name: (name, 1) for name in COBRACKET_NAMES}


def quantum_to_classical(r_terms, images, g=None):
    """
    Rank 2 classical tensor from the ħ^1 data of an R-matrix
    :param r_terms: dict (name, name) -> ExactScalar from classical_limit_extract
    :param images: generator name -> (Poincaré vector name, factor) at ħ = 0
    """
    g = g or build_iso3()
    vectors = poincare_vectors(g)
    result = WedgeTensor(g, 2)
    for (a, b), c in r_terms.items():
        (u, s), (v, t) = images[a], images[b]
        result = result + WedgeTensor.product(vectors[u], vectors[v]).scale(c * s * t)
    return result


def check_classical_limit(xi=0):
    """
    The ħ^1 terms of the K_xi and Poincaré-basis R-matrices reproduce r
    """
    g = build_iso3()
    r = build_classical_r(xi, g)
    results = [
        _tensor_check("classical_limit:k_xi",
                      quantum_to_classical(classical_limit_extract(rmat_k_xi(xi, 1)), K_XI_IMAGES, g) - r),
        _tensor_check("classical_limit:poincare",
                      quantum_to_classical(classical_limit_extract(rmat_poincare(xi, 1)), POINCARE_IMAGES, g) - r),
    ]
    return merge("classical_limit", results)
