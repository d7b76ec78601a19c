from application.algebra_core import AlgebraElement, TensorElement
from application.errors import NoSolution, UnknownGenerator
from application.message_logger import MessageLogger
from application.reports import FAIL, CheckResult, compare, merge
from application.scalar_series import HbarSeries


class HopfAlgebraDef:
    """
    Algebra with coproduct, counit and antipode given on generators
    """

    def __init__(self, name, algebra, coproduct, counit=None, antipode=None, metadata=None, identities=None):
        """
        Class constructor
        :param name: display name
        :param algebra: Algebra
        :param coproduct: dict generator name -> rank 2 TensorElement
        :param counit: dict generator name -> exact scalar, missing generators map to 0
        :param antipode: dict generator name -> AlgebraElement, derived when missing
        :param metadata: dict of documentation entries (identifications, conventions)
        :param identities: dict check name -> callable returning a CheckResult (Serre elements etc.)
        """
        ml = MessageLogger('hopf_structures')
        self.logger = ml.get_logger()

        names = algebra.table.names()
        missing = [n for n in names if n not in coproduct]
        if missing:
            raise UnknownGenerator("no coproduct for {}".format(", ".join(missing)))
        self.name = name
        self.algebra = algebra
        self.metadata = dict(metadata or {})
        self.identities = dict(identities or {})
        self.__coproduct = {algebra.table.index(n): t for n, t in coproduct.items()}
        counit = counit or {}
        self.__counit = {algebra.table.index(n): HbarSeries._coerce(counit.get(n, 0), algebra.order)
                         for n in names}
        self.__antipode = None
        if antipode is not None:
            self.__antipode = {algebra.table.index(n): x for n, x in antipode.items()}
        self.__word_coproducts = {(): TensorElement.identity(algebra, 2)}
        self.__word_antipodes = {}

    @property
    def order(self):
        return self.algebra.order

    @property
    def parameters(self):
        return self.algebra.parameters

    def coproduct_of(self, name):
        return self.__coproduct[self.algebra.table.index(name)]

    def counit_value(self, name):
        return self.__counit[self.algebra.table.index(name)]

    """ Coproduct """

    def _word_coproduct(self, word):
        cached = self.__word_coproducts.get(word)
        if cached is None:
            cached = self._word_coproduct(word[:-1]) * self.__coproduct[word[-1]]
            self.__word_coproducts[word] = cached
        return cached

    def delta(self, x):
        """
        Δ extended multiplicatively to an element
        :param x: AlgebraElement
        :return: rank 2 TensorElement
        """
        result = TensorElement(self.algebra, 2)
        for w, c in x.terms.items():
            result = result + self._word_coproduct(w).scale(c)
        return result

    def delta_cop(self, x):
        return self.delta(x).flip()

    def delta_slot(self, t, slot):
        """
        Applies Δ to one slot of a tensor, raising its rank by one
        """
        terms = {}
        for key, c in t.terms.items():
            for pair, d in self._word_coproduct(key[slot]).terms.items():
                new_key = key[:slot] + pair + key[slot + 1:]
                value = c * d
                existing = terms.get(new_key)
                terms[new_key] = value if existing is None else existing + value
        return TensorElement(self.algebra, t.rank + 1, {k: v for k, v in terms.items() if not v.is_zero()})

    """ Counit """

    def counit_word(self, word):
        result = HbarSeries.one(self.order)
        for letter in word:
            result = result * self.__counit[letter]
        return result

    def counit(self, x):
        result = HbarSeries.zero(self.order)
        for w, c in x.terms.items():
            result = result + c * self.counit_word(w)
        return result

    def counit_slot(self, t, slot):
        """
        Applies ε to one slot; a rank 2 tensor gives an AlgebraElement
        """
        terms = {}
        for key, c in t.terms.items():
            value = c * self.counit_word(key[slot])
            if value.is_zero():
                continue
            rest = key[:slot] + key[slot + 1:]
            existing = terms.get(rest)
            terms[rest] = value if existing is None else existing + value
        terms = {k: v for k, v in terms.items() if not v.is_zero()}
        if t.rank == 2:
            return AlgebraElement(self.algebra, {k[0]: v for k, v in terms.items()})
        return TensorElement(self.algebra, t.rank - 1, terms)

    """ Antipode """

    @property
    def antipode_map(self):
        if self.__antipode is None:
            self.__antipode = derive_antipode(self)
        return {self.algebra.table.name(k): v for k, v in self.__antipode.items()}

    def _word_antipode(self, word, images):
        # S(w1...wk) = sign S(wk)...S(w1)
        table = self.algebra.table
        result = self.algebra.one()
        for letter in reversed(word):
            result = result * images[letter]
        exponent = 0
        for i in range(len(word)):
            for j in range(i + 1, len(word)):
                exponent += table.parity(word[i]) * table.parity(word[j])
        return -result if exponent % 2 else result

    def antipode(self, x, images=None):
        if images is None:
            if self.__antipode is None:
                self.__antipode = derive_antipode(self)
            images = self.__antipode
            cache = self.__word_antipodes
        else:
            cache = {}
        result = self.algebra.zero()
        for w, c in x.terms.items():
            image = cache.get(w)
            if image is None:
                image = self._word_antipode(w, images)
                cache[w] = image
            result = result + image.scale(c)
        return result

    def set_antipode(self, images):
        self.__antipode = dict(images)
        self.__word_antipodes = {}

    def __repr__(self):
        return "HopfAlgebraDef({}, order {})".format(self.name, self.order)


""" Antipode derivation """


def _isolated_term(hopf, letter):
    """
    Finds g⊗1 (left axiom) or 1⊗g (right axiom) in Δ(g) with an invertible coefficient
    """
    delta = hopf._word_coproduct((letter,))
    for side, key in (('left', ((letter,), ())), ('right', ((), (letter,)))):
        c = delta.terms.get(key)
        if c is not None and c.constant_term:
            return side, key, c
    return None, None, None


def derive_antipode(hopf):
    """
    Solves m(S⊗id)Δ(g) = ε(g) (or the mirrored axiom) for every generator by
    fixed-point iteration in the ħ-adic filtration
    :param hopf: HopfAlgebraDef
    :return: dict letter -> AlgebraElement
    :raises NoSolution: when some Δ(g) has no isolated g⊗1 or 1⊗g term or the result fails the axioms
    """
    algebra = hopf.algebra
    table = algebra.table
    letters = list(range(len(table)))
    setups = {}
    for letter in letters:
        side, key, c = _isolated_term(hopf, letter)
        if side is None:
            raise NoSolution("Δ({}) has no term g⊗1 or 1⊗g".format(table.name(letter)))
        setups[letter] = (side, key, c.inverse())

    images = {letter: algebra.zero() for letter in letters}
    for iteration in range(algebra.order + len(letters) + 2):
        updated = {}
        for letter in letters:
            side, key, c_inv = setups[letter]
            rest = algebra.scalar(hopf.counit_word((letter,)))
            for (u, w), c in hopf._word_coproduct((letter,)).terms.items():
                if (u, w) == key:
                    continue
                x = AlgebraElement(algebra, {u: HbarSeries.one(algebra.order)})
                y = AlgebraElement(algebra, {w: HbarSeries.one(algebra.order)})
                if side == 'left':
                    rest = rest - (hopf.antipode(x, images) * y).scale(c)
                else:
                    rest = rest - (x * hopf.antipode(y, images)).scale(c)
            updated[letter] = rest.scale(c_inv)
        stable = all(updated[k] == images[k] for k in letters)
        images = updated
        if stable:
            hopf.logger.debug("{}: antipode stable after {} iterations".format(hopf.name, iteration + 1))
            break
    else:
        raise NoSolution("antipode iteration for {} did not stabilise".format(hopf.name))

    for letter in letters:
        g = algebra.gen(table.name(letter))
        delta = hopf.delta(g)
        unit = algebra.scalar(hopf.counit(g))
        left = delta.contract(0, lambda x: hopf.antipode(x, images))
        right = delta.contract(1, lambda x: hopf.antipode(x, images))
        if left != unit or right != unit:
            raise NoSolution("antipode of {} violates the Hopf axiom".format(table.name(letter)))
    return images


""" Axiom checks """


def _generators(hopf):
    return [hopf.algebra.gen(n) for n in hopf.algebra.table.names()]


def check_coassociativity(hopf):
    results = []
    for name in hopf.algebra.table.names():
        delta = hopf.delta(hopf.algebra.gen(name))
        results.append(compare("coassociativity:" + name, hopf.delta_slot(delta, 0) - hopf.delta_slot(delta, 1)))
    return _finish(hopf, merge("coassociativity", results))


def check_counit(hopf):
    """
    (ε⊗id)Δ = id = (id⊗ε)Δ on generators and ε multiplicative on every rule
    """
    results = []
    algebra = hopf.algebra
    for name in algebra.table.names():
        g = algebra.gen(name)
        delta = hopf.delta(g)
        results.append(compare("counit:left:" + name, hopf.counit_slot(delta, 0) - g))
        results.append(compare("counit:right:" + name, hopf.counit_slot(delta, 1) - g))
    algebra.ensure_all_rules()
    for rule in algebra.rules():
        b, a = rule.lhs
        lhs = hopf.counit(algebra.gen(b)) * hopf.counit(algebra.gen(a))
        rhs = hopf.counit(algebra.rule_rhs(b, a))
        if lhs != rhs:
            results.append(CheckResult("counit:rule:{}·{}".format(b, a), FAIL, "ε not multiplicative"))
    return _finish(hopf, merge("counit", results))


def check_coproduct_homomorphism(hopf):
    """
    Δ(b)Δ(a) = Δ(rhs) for every rule b·a -> rhs, and Δ(g)² = 0 for odd g
    """
    algebra = hopf.algebra
    algebra.ensure_all_rules()
    results = []
    for rule in algebra.rules():
        b, a = rule.lhs
        lhs = hopf.delta(algebra.gen(b)) * hopf.delta(algebra.gen(a))
        results.append(compare("coproduct_homomorphism:{}·{}".format(b, a),
                               lhs - hopf.delta(algebra.rule_rhs(b, a))))
    for name in algebra.table.names():
        if algebra.table.parity(algebra.table.index(name)):
            delta = hopf.delta(algebra.gen(name))
            results.append(compare("coproduct_homomorphism:{}²".format(name), delta * delta))
    return _finish(hopf, merge("coproduct_homomorphism", results))


def check_antipode(hopf):
    """
    m(S⊗id)Δ = ηε = m(id⊗S)Δ on every generator
    """
    try:
        hopf.antipode_map
    except NoSolution as e:
        return _finish(hopf, CheckResult("antipode", FAIL, str(e)))
    results = []
    for g, name in zip(_generators(hopf), hopf.algebra.table.names()):
        delta = hopf.delta(g)
        unit = hopf.algebra.scalar(hopf.counit(g))
        results.append(compare("antipode:left:" + name, delta.contract(0, hopf.antipode) - unit))
        results.append(compare("antipode:right:" + name, delta.contract(1, hopf.antipode) - unit))
    return _finish(hopf, merge("antipode", results))


def check_antipode_antihomomorphism(hopf):
    """
    S(rhs) = (-1)^(|a||b|) S(a) S(b) for every rule b·a -> rhs
    """
    algebra = hopf.algebra
    table = algebra.table
    try:
        hopf.antipode_map
    except NoSolution as e:
        return _finish(hopf, CheckResult("antipode_antihomomorphism", FAIL, str(e)))
    algebra.ensure_all_rules()
    results = []
    for rule in algebra.rules():
        b, a = rule.lhs
        sign = table.koszul(table.index(b), table.index(a))
        lhs = (hopf.antipode(algebra.gen(a)) * hopf.antipode(algebra.gen(b))).scale(sign)
        results.append(compare("antipode_antihomomorphism:{}·{}".format(b, a),
                               lhs - hopf.antipode(algebra.rule_rhs(b, a))))
    return _finish(hopf, merge("antipode_antihomomorphism", results))


def check_hopf_map(phi, source, target, name="hopf_map"):
    """
    Algebra map that also intertwines the coproducts: (φ⊗φ)Δ(g) = Δ'(φ(g))
    """
    results = [phi.check_algebra_map()]
    for n in source.algebra.table.names():
        g = source.algebra.gen(n)
        lhs = phi.apply_tensor(source.delta(g))
        results.append(compare("{}:coproduct:{}".format(name, n), lhs - target.delta(phi.apply(g))))
    return merge(name, results)


def run_identities(hopf):
    """
    The extra identities registered by the builder (Serre elements, composite definitions, ...)
    """
    return [fn() for _, fn in sorted(hopf.identities.items())]


def _finish(hopf, result):
    if result.passed:
        hopf.logger.info("{}: {} passed".format(hopf.name, result.name))
    else:
        hopf.logger.warning("{}: {} failed: {}".format(hopf.name, result.name, result.detail))
    return result


HOPF_CHECKS = {
    "coassociativity": check_coassociativity,
    "counit": check_counit,
    "coproduct_homomorphism": check_coproduct_homomorphism,
    "antipode": check_antipode,
    "antipode_antihomomorphism": check_antipode_antihomomorphism,
}
