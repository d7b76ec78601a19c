from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from application.algebra_core import AlgebraElement, AlgebraMap, TensorElement
from application.errors import DegenerateEpsilon, UnknownGenerator
from application.message_logger import MessageLogger
from application.quantum_algebras import build_k_xi_iso3, build_sl2_tensor
from application.reports import FAIL, PASS, CheckResult, merge
from application.rmatrix import prelimit_rmatrix, rmat_k_xi
from application.scalar_series import ExactScalar

LINEAR = "linear"
HIGHER_ORDER = "higher order"
DIVERGENT = "divergent"
MISMATCH = "finite mismatch"
EXACT = "exact"

logger = MessageLogger('contraction').get_logger()


class ContractionMap:
    """
    Contracted generators of U_{εħ}(sl2) ⊗ U_{ε~ħ}(sl2) with ε~ = βε + ξε²:
    E_A = E + Et, E_C = εE, and the same for F and H
    """

    def __init__(self, epsilon, xi=0, order=3, beta=-1):
        """
        Class constructor
        :param epsilon: non-zero exact scalar
        :param xi: exact scalar
        :param order: truncation order N
        :param beta: -1 for the finite limit, +1 reproduces the divergent pairing
        """
        self.logger = MessageLogger('contraction').get_logger()
        epsilon = ExactScalar.of(epsilon)
        xi = ExactScalar.of(xi)
        if not epsilon:
            raise DegenerateEpsilon("the contraction needs ε != 0")
        tilde_epsilon = epsilon * beta + xi * epsilon * epsilon
        if not tilde_epsilon:
            raise DegenerateEpsilon("ε~ = {}ε + ξε² vanishes at ε = {}".format(beta, epsilon))
        self.epsilon = epsilon
        self.tilde_epsilon = tilde_epsilon
        self.xi = xi
        self.beta = beta
        self.order = order
        self.source = build_sl2_tensor(epsilon, xi, order, beta)
        self.target = build_k_xi_iso3(xi, order)
        self.__push = AlgebraMap(self.target.algebra, self.source.algebra, self._images(), "contraction")
        self.__letters = self._inverse_letters()
        self.__rmatrices = {}
        self.logger.debug("contraction map at ε = {}, ε~ = {}".format(epsilon, tilde_epsilon))

    def _images(self):
        g = self.source.algebra.gen
        images = {}
        for plain, tilde, suffix in (('E', 'Et', 'E'), ('H', 'Ht', 'H'), ('F', 'Ft', 'F')):
            images[suffix + '_A'] = g(plain) + g(tilde)
            images[suffix + '_C'] = g(plain).scale(self.epsilon)
        return images

    def _inverse_letters(self):
        """
        E = E_C/ε and Et = E_A - E_C/ε, letter by letter
        """
        source = self.source.algebra.table
        target = self.target.algebra.table
        inverse = ExactScalar.of(1) / self.epsilon
        letters = {}
        for plain, tilde, suffix in (('E', 'Et', 'E'), ('H', 'Ht', 'H'), ('F', 'Ft', 'F')):
            a, c = target.index(suffix + '_A'), target.index(suffix + '_C')
            letters[source.index(plain)] = {c: inverse}
            letters[source.index(tilde)] = {a: ExactScalar.of(1), c: -inverse}
        return letters

    """ Moving between the two sets of letters """

    def push(self, x):
        """
        Image of an element written in contracted letters, computed in the tensor product algebra
        """
        return self.__push.apply(x)

    def push_tensor(self, t):
        return self.__push.apply_tensor(t)

    def _pull_word(self, word):
        """
        Expands a normal word of the tensor product algebra in contracted letters. Within each
        block (E, Et), (H, Ht), (F, Ft) the letters commute, so sorted target words are normal.
        """
        terms = {(): ExactScalar.of(1)}
        for letter in word:
            expansion = self.__letters.get(letter)
            if expansion is None:
                raise UnknownGenerator("letter {} has no contracted image".format(letter))
            new = {}
            for w, c in terms.items():
                for t, d in expansion.items():
                    key = tuple(sorted(w + (t,)))
                    new[key] = new[key] + c * d if key in new else c * d
            terms = new
        return {w: c for w, c in terms.items() if c}

    def pull_back(self, x):
        """
        Rewrites a tensor product algebra element in contracted letters; the result lives on the
        letters of the contracted algebra and carries the ε-dependence of the pre-limit algebra
        """
        terms = {}
        for w, c in x.terms.items():
            for t, s in self._pull_word(w).items():
                value = c * s
                terms[t] = terms[t] + value if t in terms else value
        return AlgebraElement(self.target.algebra, {w: c for w, c in terms.items() if not c.is_zero()})

    def pull_back_tensor(self, t):
        terms = {}
        for key, c in t.terms.items():
            expanded = {(): ExactScalar.of(1)}
            for w in key:
                slot = self._pull_word(w)
                expanded = {k + (u,): s * v for k, s in expanded.items() for u, v in slot.items()}
            for k, s in expanded.items():
                value = c * s
                terms[k] = terms[k] + value if k in terms else value
        return TensorElement(self.target.algebra, t.rank, {k: c for k, c in terms.items() if not c.is_zero()})

    """ Residuals """

    def rule_residual(self, b, a):
        """
        b·a minus the right-hand side of the contracted rule, evaluated before the limit
        """
        target = self.target.algebra
        lhs = self.push(target.gen(b)) * self.push(target.gen(a))
        return self.pull_back(lhs - self.push(target.rule_rhs(b, a)))

    def coproduct_residual(self, name):
        delta = self.source.delta(self.push(self.target.algebra.gen(name)))
        return self.pull_back_tensor(delta - self.push_tensor(self.target.coproduct_of(name)))

    def rmatrix_residual(self, wrong_pairing=False):
        if wrong_pairing not in self.__rmatrices:
            self.__rmatrices[wrong_pairing] = prelimit_rmatrix(self.source, wrong_pairing)
        if 'contracted' not in self.__rmatrices:
            self.__rmatrices['contracted'] = rmat_k_xi(hopf=self.target)
        return self.pull_back_tensor(self.__rmatrices[wrong_pairing].value) - self.__rmatrices['contracted'].value


def relation_ids(contraction):
    """
    Every relation of the contracted algebra that can be tested: its rules, its coproducts and its R-matrix
    """
    target = contraction.target.algebra
    target.ensure_all_rules()
    ids = ["rule:{}.{}".format(*rule.lhs) for rule in target.rules()]
    ids.extend("coproduct:" + n for n in target.table.names())
    ids.append("rmatrix")
    return ids


def contraction_residual(contraction, relation_id):
    """
    Largest coefficient of the pre-limit residual of one relation, in contracted letters
    :param contraction: ContractionMap
    :param relation_id: "rule:B.A", "coproduct:X", "rmatrix" or "rmatrix:wrong_pairing"
    :return: Fraction
    """
    kind, _, rest = relation_id.partition(':')
    if kind == 'rule':
        b, a = rest.split('.')
        residual = contraction.rule_residual(b, a)
    elif kind == 'coproduct':
        residual = contraction.coproduct_residual(rest)
    elif kind == 'rmatrix':
        residual = contraction.rmatrix_residual(rest == 'wrong_pairing')
    else:
        raise UnknownGenerator("unknown relation {}".format(relation_id))
    return residual.magnitude()


def classify_ratio(coarse, fine):
    """
    Classifies res(ε)/res(ε/2): about 2 for an O(ε) residual, about 1/2 for a 1/ε divergence
    :return: (classification, ratio or None)
    """
    if not coarse and not fine:
        return EXACT, None
    if not fine:
        return HIGHER_ORDER, None
    ratio = Fraction(coarse) / Fraction(fine)
    if ratio > Fraction(5, 2):
        return HIGHER_ORDER, ratio
    if ratio >= Fraction(3, 2):
        return LINEAR, ratio
    if ratio <= Fraction(3, 4):
        return DIVERGENT, ratio
    return MISMATCH, ratio


def ratio_detail(classes):
    detail = ", ".join(sorted(set(classes)))
    if DIVERGENT in classes:
        detail += " (1/ε term survives, ε~/ε must tend to -1)"
    if HIGHER_ORDER in classes:
        detail += " (residual falls faster than ε, accepted as O(ε))"
    return detail


def _relation_result(maps, relation_id):
    residuals = [contraction_residual(m, relation_id) for m in maps]
    classes = []
    ratios = []
    for coarse, fine in zip(residuals, residuals[1:]):
        kind, ratio = classify_ratio(coarse, fine)
        classes.append(kind)
        ratios.append(None if ratio is None else str(ratio))
    passed = all(c in (EXACT, LINEAR, HIGHER_ORDER) for c in classes)
    data = {
        'epsilon': [str(m.epsilon) for m in maps],
        'residuals': [str(r) for r in residuals],
        'ratios': ratios,
        'classification': classes,
    }
    detail = ratio_detail(classes)
    return CheckResult("contraction:" + relation_id, PASS if passed else FAIL, detail, data=data)


def check_contraction(epsilon, xi=0, order=3, beta=-1, relations=None, threads=1):
    """
    Ratio test at ε, ε/2 and ε/4 for every requested relation
    :param relations: relation ids, all of relation_ids by default
    :param threads: worker threads
    :return: CheckResult named "contraction" and the per-relation results
    """
    epsilon = ExactScalar.of(epsilon)
    maps = [ContractionMap(epsilon / k, xi, order, beta) for k in (1, 2, 4)]
    relations = relations or relation_ids(maps[0])
    logger.info("contraction ratio test for {} relations at ε = {}, β = {}".format(len(relations), epsilon, beta))
    with ThreadPoolExecutor(max_workers=threads) as executor:
        results = list(executor.map(lambda r: _relation_result(maps, r), relations))
    results.sort(key=lambda r: r.name)
    result = merge("contraction", results)
    if not result.passed:
        logger.warning("contraction fails: {}".format(result.detail))
    return result, results
