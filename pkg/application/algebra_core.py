from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from threading import RLock

from application.errors import (AlgebraMismatch, DegenerateParameter, InvalidRule, MissingRule, NameCollision,
                                NonNilpotentOrderZero, RankMismatch, RuleCycle, UnknownGenerator)
from application.message_logger import MessageLogger
from application.reports import FAIL, PASS, CheckResult
from application.scalar_series import ExactScalar, HbarSeries, q_factorial, q_power, taylor_in_hbar

NILPOTENCY_LIMIT = 16


@dataclass(frozen=True)
class Generator:
    name: str
    parity: int
    sort_key: int


class GeneratorTable:
    """
    Ordered generator set of a (super)algebra; letters are the positions in sort order
    """

    def __init__(self, generators):
        """
        Class constructor
        :param generators: iterable of Generator (or (name, parity) pairs, keyed by position)
        """
        items = []
        for position, g in enumerate(generators):
            if not isinstance(g, Generator):
                g = Generator(g[0], int(g[1]), position)
            if g.parity not in (0, 1):
                raise InvalidRule("parity of {} must be 0 or 1".format(g.name))
            items.append(g)
        items.sort(key=lambda g: g.sort_key)
        self.__generators = tuple(items)
        self.__index = {}
        for i, g in enumerate(items):
            if g.name in self.__index:
                raise NameCollision("generator {} declared twice".format(g.name))
            self.__index[g.name] = i
        keys = [g.sort_key for g in items]
        if len(set(keys)) != len(keys):
            raise NameCollision("sort keys must be distinct")
        self.__parities = tuple(g.parity for g in items)
        self.__word_parity = {}

    def __len__(self):
        return len(self.__generators)

    def __iter__(self):
        return iter(self.__generators)

    def __contains__(self, name):
        return name in self.__index

    def names(self):
        return [g.name for g in self.__generators]

    def index(self, name):
        try:
            return self.__index[name]
        except KeyError:
            raise UnknownGenerator("unknown generator {}".format(name))

    def name(self, letter):
        return self.__generators[letter].name

    def parity(self, letter):
        return self.__parities[letter]

    def word_parity(self, word):
        cached = self.__word_parity.get(word)
        if cached is None:
            cached = sum(self.__parities[x] for x in word) % 2
            self.__word_parity[word] = cached
        return cached

    def encode(self, names):
        return tuple(self.index(n) for n in names)

    def decode(self, word):
        return tuple(self.name(x) for x in word)

    def is_normal(self, word):
        for x, y in zip(word, word[1:]):
            if x > y or (x == y and self.__parities[x]):
                return False
        return True

    def koszul(self, b, a):
        return -1 if self.__parities[a] and self.__parities[b] else 1


@dataclass(frozen=True)
class RewriteRule:
    """
    b·a -> (-1)^(|a||b|) e^(koszul_exponent·ħ) a·b + tail, for b after a in sort order
    """
    lhs: tuple
    koszul_exponent: ExactScalar = field(default_factory=lambda: ExactScalar.of(0))
    tail: dict = field(default_factory=dict, compare=False)
    derived: bool = False


def _accumulate(terms, key, value):
    existing = terms.get(key)
    terms[key] = value if existing is None else existing + value


def _prune(terms):
    return {k: v for k, v in terms.items() if not v.is_zero()}


class Algebra:
    """
    Rewriting system over the ordered generators, truncated at ħ-order `order`
    """

    def __init__(self, name, table, order, rules=(), deriver=None, parameters=None):
        """
        Class constructor
        :param name: algebra identifier
        :param table: GeneratorTable
        :param order: truncation order N
        :param rules: RewriteRule instances
        :param deriver: callable(algebra, b, a) -> tail dict {word: HbarSeries} for pairs without rule
        :param parameters: dict of named exact scalars (ε, ξ, ...)
        """
        if order < 0:
            raise DegenerateParameter("order must be non-negative")
        self.name = name
        self.table = table
        self.order = order
        self.parameters = dict(parameters or {})
        ml = MessageLogger('algebra_core')
        self.logger = ml.get_logger()

        self.__rules = {}
        self.__records = {}
        self.__deriver = deriver
        self.__lock = RLock()
        self.__deriving = set()
        self.__insert_cache = {}
        self.__words_cache = {}
        for rule in rules:
            self.add_rule(rule)

    """ Rules """

    def add_rule(self, rule):
        """
        Registers a rule given by generator names; its tail words must be normal
        :param rule: RewriteRule
        """
        b, a = self.table.encode(rule.lhs)
        if b <= a:
            raise InvalidRule("rule {}·{} is not out of order".format(*rule.lhs))
        if (b, a) in self.__rules:
            raise NameCollision("rule for {}·{} declared twice".format(*rule.lhs))
        tail = {}
        for names, coeff in rule.tail.items():
            word = self.table.encode(names)
            if not self.table.is_normal(word):
                raise InvalidRule("tail word {} of rule {}·{} is not normal".format(names, *rule.lhs))
            coeff = HbarSeries._coerce(coeff, self.order).truncate(self.order)
            if not coeff.is_zero():
                _accumulate(tail, word, coeff)
        swap = q_power(rule.koszul_exponent, self.order) * self.table.koszul(b, a)
        self.__rules[(b, a)] = (swap, _prune(tail))
        self.__records[(b, a)] = rule

    def set_rule(self, b_name, a_name, element, exponent=0):
        """
        Registers b·a -> σ e^(exponent ħ) a·b + element
        """
        tail = {self.table.decode(w): c for w, c in element.terms.items()}
        self.add_rule(RewriteRule((b_name, a_name), ExactScalar.of(exponent), tail))

    def has_rule(self, b_name, a_name):
        return self.table.encode((b_name, a_name)) in self.__rules

    def _rule(self, b, a):
        rule = self.__rules.get((b, a))
        if rule is not None:
            return rule
        if self.__deriver is None:
            raise MissingRule(self.table.name(b), self.table.name(a))
        with self.__lock:
            rule = self.__rules.get((b, a))
            if rule is not None:
                return rule
            if (b, a) in self.__deriving:
                raise RuleCycle(self.table.name(b), self.table.name(a))
            self.__deriving.add((b, a))
            try:
                tail = self.__deriver(self, b, a)
            finally:
                self.__deriving.discard((b, a))
            tail = _prune({w: c.truncate(self.order) for w, c in tail.items()})
            swap = HbarSeries.constant(self.table.koszul(b, a), self.order)
            self.__rules[(b, a)] = (swap, tail)
            names = self.table.decode((b, a))
            self.__records[(b, a)] = RewriteRule(names, ExactScalar.of(0),
                                                 {self.table.decode(w): c for w, c in tail.items()}, True)
            self.logger.debug("{}: derived rule {}·{} with {} tail terms".format(self.name, names[0], names[1],
                                                                                len(tail)))
            return self.__rules[(b, a)]

    def ensure_all_rules(self):
        n = len(self.table)
        for a in range(n):
            for b in range(a + 1, n):
                self._rule(b, a)

    def rules(self):
        """
        All rules known so far, explicit and derived, in letter order
        :return: list of RewriteRule
        """
        return [self.__records[k] for k in sorted(self.__records, key=lambda p: (p[1], p[0]))]

    def rule_rhs(self, b_name, a_name):
        """
        Right-hand side of the rule for b·a as an element
        """
        b, a = self.table.encode((b_name, a_name))
        swap, tail = self._rule(b, a)
        terms = dict(tail)
        _accumulate(terms, (a, b), swap)
        return AlgebraElement(self, _prune(terms))

    """ Word arithmetic """

    def _insert(self, word, letter, budget):
        """
        Normal form of word·letter for a normal word, known to ħ^budget
        :return: dict word -> HbarSeries of order budget (shared, do not mutate)
        """
        key = (word, letter, budget)
        cached = self.__insert_cache.get(key)
        if cached is not None:
            return cached
        if not word or word[-1] < letter:
            result = {word + (letter,): HbarSeries.one(budget)}
        elif word[-1] == letter:
            result = {} if self.table.parity(letter) else {word + (letter,): HbarSeries.one(budget)}
        else:
            b = word[-1]
            prefix = word[:-1]
            swap, tail = self._rule(b, letter)
            result = {}
            sv = swap.valuation
            if sv is not None and sv <= budget:
                inner_budget = budget - sv
                for w, c in self._insert(prefix, letter, inner_budget).items():
                    for z, d in self._insert(w, b, inner_budget - c.valuation).items():
                        _accumulate(result, z, swap.mul_to(c.mul_to(d, inner_budget), budget))
            for tw, tc in tail.items():
                tv = tc.valuation
                if tv > budget:
                    continue
                for z, d in self._multiply_words(prefix, tw, budget - tv).items():
                    _accumulate(result, z, tc.mul_to(d, budget))
            result = _prune(result)
        self.__insert_cache[key] = result
        return result

    def _multiply_words(self, left, right, budget):
        """
        Normal form of left·right where left is normal; right may be any word
        """
        key = (left, right, budget)
        cached = self.__words_cache.get(key)
        if cached is not None:
            return cached
        current = {left: HbarSeries.one(budget)}
        for letter in right:
            new = {}
            for w, c in current.items():
                for z, d in self._insert(w, letter, budget - c.valuation).items():
                    _accumulate(new, z, c.mul_to(d, budget))
            current = _prune(new)
            if not current:
                break
        self.__words_cache[key] = current
        return current

    def multiply_terms(self, x_terms, y_terms):
        out = {}
        for u, c in x_terms.items():
            for w, d in y_terms.items():
                cd = c * d
                if cd.valuation is None:
                    continue
                for z, e in self._multiply_words(u, w, cd.order - cd.valuation).items():
                    _accumulate(out, z, cd.mul_to(e, cd.order))
        return _prune(out)

    def tensor_multiply_terms(self, x_terms, y_terms):
        parity = self.table.word_parity
        out = {}
        for us, c in x_terms.items():
            pu = [parity(u) for u in us]
            for ws, d in y_terms.items():
                cd = c * d
                if cd.valuation is None:
                    continue
                budget = cd.order - cd.valuation
                pw = [parity(w) for w in ws]
                exponent = sum(pu[i] * pw[j] for i in range(len(us)) for j in range(i))
                if exponent % 2:
                    cd = -cd
                combos = {(): HbarSeries.one(budget)}
                for u, w in zip(us, ws):
                    product = self._multiply_words(u, w, budget)
                    new = {}
                    for key, s in combos.items():
                        for z, e in product.items():
                            _accumulate(new, key + (z,), s.mul_to(e, budget))
                    combos = _prune(new)
                    if not combos:
                        break
                for key, s in combos.items():
                    _accumulate(out, key, cd.mul_to(s, cd.order))
        return _prune(out)

    """ Element constructors """

    def zero(self):
        return AlgebraElement(self, {})

    def one(self):
        return self.scalar(1)

    def scalar(self, value):
        series = HbarSeries._coerce(value, self.order).truncate(self.order)
        return AlgebraElement(self, _prune({(): series}))

    def hbar(self):
        return self.scalar(HbarSeries.hbar(self.order))

    def gen(self, name):
        return AlgebraElement(self, {(self.table.index(name),): HbarSeries.one(self.order)})

    def monomial(self, *names):
        """
        Normal form of the product of the named generators
        """
        word = self.table.encode(names)
        return AlgebraElement(self, self._multiply_words((), word, self.order))

    def element(self, terms):
        """
        Element from {names tuple: coefficient}, words in any order
        """
        return normal_form(self, terms.items())

    def q_power(self, alpha):
        return q_power(alpha, self.order)

    def series(self, coeffs):
        return HbarSeries(coeffs, self.order)

    def __repr__(self):
        return "Algebra({}, {} generators, order {})".format(self.name, len(self.table), self.order)


class AlgebraElement:
    """
    Finite combination of normal words with HbarSeries coefficients
    """

    __slots__ = ('algebra', 'terms')

    def __init__(self, algebra, terms=None):
        self.algebra = algebra
        self.terms = terms or {}

    def _check(self, other):
        if other.algebra is not self.algebra:
            raise AlgebraMismatch("elements of different algebras: {} and {}".format(self.algebra.name,
                                                                                      other.algebra.name))

    def _coerce(self, other):
        if isinstance(other, AlgebraElement):
            self._check(other)
            return other
        return self.algebra.scalar(other)

    """ Arithmetic """

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        terms = dict(self.terms)
        for w, c in other.terms.items():
            _accumulate(terms, w, c)
        return AlgebraElement(self.algebra, _prune(terms))

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.algebra, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, value):
        if not isinstance(value, HbarSeries):
            value = ExactScalar.of(value)
        return AlgebraElement(self.algebra, _prune({w: c * value for w, c in self.terms.items()}))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._check(other)
            return AlgebraElement(self.algebra, self.algebra.multiply_terms(self.terms, other.terms))
        if isinstance(other, (HbarSeries, ExactScalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (HbarSeries, ExactScalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, power):
        result = self.algebra.one()
        for _ in range(power):
            result = result * self
        return result

    """ Inspection """

    def is_zero(self):
        return not self.terms

    def valuation(self):
        return min((c.valuation for c in self.terms.values()), default=None)

    def parity(self):
        """
        Parity of a homogeneous element
        """
        parities = {self.algebra.table.word_parity(w) for w in self.terms}
        if len(parities) > 1:
            raise ValueError("element is not homogeneous")
        return parities.pop() if parities else 0

    def coefficient(self, *names):
        word = self.algebra.table.encode(names)
        return self.terms.get(word, HbarSeries.zero(self.algebra.order))

    def named_terms(self):
        return {self.algebra.table.decode(w): c for w, c in self.terms.items()}

    def magnitude(self):
        return max((c.magnitude() for c in self.terms.values()), default=Fraction(0))

    def reflect(self):
        return AlgebraElement(self.algebra, {w: c.reflect() for w, c in self.terms.items()})

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda x: (len(x), x)):
            names = "·".join(self.algebra.table.decode(w)) or "1"
            parts.append("[{}]{}".format(self.terms[w], names))
        return " + ".join(parts)

    __repr__ = __str__


class TensorElement:
    """
    Element of the rank-k graded tensor power, keyed by tuples of normal words
    """

    __slots__ = ('algebra', 'rank', 'terms')

    def __init__(self, algebra, rank, terms=None):
        self.algebra = algebra
        self.rank = rank
        self.terms = terms or {}

    @classmethod
    def identity(cls, algebra, rank):
        return cls(algebra, rank, {((),) * rank: HbarSeries.one(algebra.order)})

    @classmethod
    def product(cls, *elements):
        """
        x_1 ⊗ ... ⊗ x_k for algebra elements
        """
        algebra = elements[0].algebra
        terms = {(): HbarSeries.one(algebra.order)}
        for x in elements:
            new = {}
            for key, c in terms.items():
                for w, d in x.terms.items():
                    _accumulate(new, key + (w,), c * d)
            terms = _prune(new)
        return cls(algebra, len(elements), terms)

    def _check(self, other):
        if other.algebra is not self.algebra:
            raise AlgebraMismatch("tensors over different algebras")
        if other.rank != self.rank:
            raise RankMismatch("rank {} against rank {}".format(self.rank, other.rank))

    def _coerce(self, other):
        if isinstance(other, TensorElement):
            self._check(other)
            return other
        return TensorElement.identity(self.algebra, self.rank).scale(other)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        terms = dict(self.terms)
        for k, c in other.terms.items():
            _accumulate(terms, k, c)
        return TensorElement(self.algebra, self.rank, _prune(terms))

    __radd__ = __add__

    def __neg__(self):
        return TensorElement(self.algebra, self.rank, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, value):
        if not isinstance(value, HbarSeries):
            value = ExactScalar.of(value)
        return TensorElement(self.algebra, self.rank, _prune({k: c * value for k, c in self.terms.items()}))

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            self._check(other)
            return TensorElement(self.algebra, self.rank, self.algebra.tensor_multiply_terms(self.terms, other.terms))
        if isinstance(other, (HbarSeries, ExactScalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (HbarSeries, ExactScalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, power):
        result = TensorElement.identity(self.algebra, self.rank)
        for _ in range(power):
            result = result * self
        return result

    def is_zero(self):
        return not self.terms

    def valuation(self):
        return min((c.valuation for c in self.terms.values()), default=None)

    def magnitude(self):
        return max((c.magnitude() for c in self.terms.values()), default=Fraction(0))

    def reflect(self):
        return TensorElement(self.algebra, self.rank, {k: c.reflect() for k, c in self.terms.items()})

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    """ Slot operations """

    def permute(self, source):
        """
        New slot i holds old slot source[i], with the Koszul sign of the reordering
        """
        if sorted(source) != list(range(self.rank)):
            raise RankMismatch("not a permutation of {} slots: {}".format(self.rank, source))
        parity = self.algebra.table.word_parity
        terms = {}
        for key, c in self.terms.items():
            ps = [parity(w) for w in key]
            exponent = 0
            for i in range(self.rank):
                for j in range(i + 1, self.rank):
                    if source[i] > source[j]:
                        exponent += ps[source[i]] * ps[source[j]]
            new_key = tuple(key[s] for s in source)
            _accumulate(terms, new_key, -c if exponent % 2 else c)
        return TensorElement(self.algebra, self.rank, _prune(terms))

    def flip(self):
        if self.rank != 2:
            raise RankMismatch("flip needs rank 2, got {}".format(self.rank))
        return self.permute((1, 0))

    def legs(self, positions, rank):
        """
        Embeds this tensor into rank slots: slot k goes to positions[k], the rest hold 1
        e.g. R.legs((0, 2), 3) = R13, R.legs((1, 0), 2) = R21
        """
        if len(positions) != self.rank or len(set(positions)) != self.rank or max(positions) >= rank:
            raise RankMismatch("cannot place rank {} at {} in rank {}".format(self.rank, positions, rank))
        order = sorted(range(self.rank), key=lambda k: positions[k])
        ordered = self.permute(tuple(order))
        targets = sorted(positions)
        terms = {}
        for key, c in ordered.terms.items():
            full = [()] * rank
            for word, t in zip(key, targets):
                full[t] = word
            terms[tuple(full)] = c
        return TensorElement(self.algebra, rank, terms)

    def slot_map(self, fn):
        """
        Applies an even linear map, element -> element or tensor, to every slot
        """
        result = None
        for key, c in self.terms.items():
            factors = [fn(AlgebraElement(self.algebra, {w: HbarSeries.one(self.algebra.order)})) for w in key]
            term = TensorElement.product(*factors).scale(c)
            result = term if result is None else result + term
        return result if result is not None else TensorElement(self.algebra, self.rank)

    def contract(self, antipode_slot=None, antipode=None):
        """
        Multiplies the slots together, m(x ⊗ y ⊗ ...), optionally applying a map to one slot first
        """
        algebra = self.algebra
        result = algebra.zero()
        for key, c in self.terms.items():
            product = algebra.one()
            for i, w in enumerate(key):
                factor = AlgebraElement(algebra, {w: HbarSeries.one(algebra.order)})
                if antipode_slot == i:
                    factor = antipode(factor)
                product = product * factor
            result = result + product.scale(c)
        return result

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms):
            slots = ["·".join(self.algebra.table.decode(w)) or "1" for w in key]
            parts.append("[{}]{}".format(self.terms[key], "⊗".join(slots)))
        return " + ".join(parts)

    __repr__ = __str__


""" Module operations """


def multiply(x, y):
    return x * y


def tensor_multiply(x, y):
    return x * y


def normal_form(algebra, terms):
    """
    Rewrites arbitrary words to the PBW normal form
    :param algebra: Algebra
    :param terms: iterable of (names sequence, coefficient)
    :return: AlgebraElement
    """
    out = {}
    for names, coeff in terms:
        coeff = HbarSeries._coerce(coeff, algebra.order).truncate(algebra.order)
        if coeff.is_zero():
            continue
        word = algebra.table.encode(names)
        for z, d in algebra._multiply_words((), word, algebra.order - coeff.valuation).items():
            _accumulate(out, z, coeff.mul_to(d, algebra.order))
    return AlgebraElement(algebra, _prune(out))


def rewrite(algebra, terms, pick=None):
    """
    Applies one rule at a time until every word is normal, without the insertion caches of normal_form
    :param algebra: Algebra
    :param terms: iterable of (names sequence, coefficient)
    :param pick: callable choosing a redex position from a list, leftmost by default
    :return: (AlgebraElement, number of rule applications)
    """
    table = algebra.table
    pick = pick or min
    pending = {}
    for names, coeff in terms:
        _accumulate(pending, table.encode(names), HbarSeries._coerce(coeff, algebra.order).truncate(algebra.order))
    done = {}
    steps = 0
    while pending:
        word = next(iter(pending))
        coeff = pending.pop(word)
        if coeff.is_zero():
            continue
        redexes = [i for i, (x, y) in enumerate(zip(word, word[1:]))
                   if x > y or (x == y and table.parity(x))]
        if not redexes:
            _accumulate(done, word, coeff)
            continue
        i = pick(redexes)
        b, a = word[i], word[i + 1]
        prefix, suffix = word[:i], word[i + 2:]
        steps += 1
        if b == a:
            continue
        swap, tail = algebra._rule(b, a)
        _accumulate(pending, prefix + (a, b) + suffix, coeff * swap)
        for tw, tc in tail.items():
            _accumulate(pending, prefix + tw + suffix, coeff * tc)
    return AlgebraElement(algebra, _prune(done)), steps


def q_commutator(x, y, alpha=0):
    """
    [x, y]_alpha = x·y - (-1)^(|x||y|) e^(alpha ħ) y·x for homogeneous x, y
    """
    sign = -1 if x.parity() and y.parity() else 1
    return x * y - (y * x).scale(q_power(alpha, x.algebra.order) * sign)


def graded_commutator(x, y):
    return q_commutator(x, y, 0)


def _unit_like(x):
    if isinstance(x, TensorElement):
        return TensorElement.identity(x.algebra, x.rank)
    return x.algebra.one()


def polynomial_in(x, coefficients):
    """
    Sum of c_n x^n
    :param x: AlgebraElement or TensorElement
    :param coefficients: iterable of (n, HbarSeries)
    """
    result = _unit_like(x).scale(0)
    power = _unit_like(x)
    current = 0
    for n, c in sorted(coefficients, key=lambda t: t[0]):
        if c.is_zero():
            continue
        while current < n:
            power = power * x
            current += 1
        result = result + power.scale(c)
    return result


def hbar_function(kind, x, alpha=1, shift=0):
    """
    f(alpha ħ x) / ħ^shift for f in exp, sinh, cosh, cosh-1
    e.g. hbar_function('sinh', H, 1, 1) = sinh(ħH)/ħ
    """
    return polynomial_in(x, taylor_in_hbar(kind, alpha, x.algebra.order, shift))


def q_power_element(x, alpha):
    """
    q^(alpha x) = e^(alpha ħ x)
    """
    return hbar_function('exp', x, alpha)


def sinh_ratio(x, alpha):
    """
    (q^(alpha x) - q^(-alpha x)) / (q^alpha - q^(-alpha)), equal to x at alpha = 0
    """
    alpha = ExactScalar.of(alpha)
    if not alpha:
        return x
    order = x.algebra.order
    numerator = hbar_function('sinh', x, alpha, 1)
    denominator = HbarSeries.zero(order)
    for _, c in taylor_in_hbar('sinh', alpha, order, 1):
        denominator = denominator + c
    return numerator.scale(denominator.inverse())


def adjoint_series(log_t, x):
    """
    Ad_T(x) = T x T^-1 = x + [log T, x] + [log T, [log T, x]]/2 + ... for log T of positive valuation
    """
    valuation = log_t.valuation()
    if valuation is None:
        return x
    if valuation == 0:
        raise NonNilpotentOrderZero("conjugation needs log T of positive ħ-valuation")
    result = x
    term = x
    n = 0
    while True:
        n += 1
        term = (log_t * term - term * log_t).scale(Fraction(1, n))
        if term.is_zero():
            return result
        result = result + term


def _power_series(x, coefficient):
    """
    Sum of coefficient(n) x^n until the terms vanish
    """
    order = x.algebra.order
    valuation = x.valuation()
    result = _unit_like(x)
    if valuation is None:
        return result
    power = _unit_like(x)
    for n in range(1, order + NILPOTENCY_LIMIT + 1):
        power = power * x
        if power.is_zero():
            return result
        result = result + power.scale(coefficient(n))
    raise NonNilpotentOrderZero("series in an element of valuation {} does not terminate".format(valuation))


def exp_element(x):
    """
    Exponential of an element or tensor with positive ħ-valuation or nilpotent leading part
    """
    order = x.algebra.order
    return _power_series(x, lambda n: HbarSeries.constant(Fraction(1, factorial(n)), order))


def qexp_element(x, alpha):
    """
    exp_q[x] = sum x^n / [n]_q! with q = e^(alpha ħ)
    """
    order = x.algebra.order
    return _power_series(x, lambda n: q_factorial(n, alpha, order).inverse())


def check_local_confluence(algebra, letters=None):
    """
    Resolves every overlap c·b·a both ways and the odd squares next to each rule
    :param algebra: Algebra
    :param letters: optional generator names to restrict the overlaps to
    :return: CheckResult
    """
    table = algebra.table
    algebra.ensure_all_rules()
    selected = sorted(table.encode(letters)) if letters else list(range(len(table)))
    failures = []
    count = 0
    for i, a in enumerate(selected):
        for j in range(i + 1, len(selected)):
            b = selected[j]
            na, nb = table.name(a), table.name(b)
            rhs_ba = algebra.rule_rhs(nb, na)
            if table.parity(b) and not (algebra.gen(nb) * rhs_ba).is_zero():
                failures.append("{}·{}·{}".format(nb, nb, na))
            if table.parity(a) and not (rhs_ba * algebra.gen(na)).is_zero():
                failures.append("{}·{}·{}".format(nb, na, na))
            for c in selected[j + 1:]:
                nc = table.name(c)
                count += 1
                left = algebra.rule_rhs(nc, nb) * algebra.gen(na)
                right = algebra.gen(nc) * rhs_ba
                if left != right:
                    failures.append("{}·{}·{}".format(nc, nb, na))
    if failures:
        algebra.logger.warning("{}: {} non-confluent overlaps".format(algebra.name, len(failures)))
        return CheckResult("confluence", FAIL, "overlaps fail: " + ", ".join(failures[:10]),
                           data={"failures": failures})
    return CheckResult("confluence", PASS, "{} overlaps resolve".format(count))


@dataclass(frozen=True)
class CompositeDefinition:
    """
    name := kappa (left·right - (-1)^(|left||right|) e^(beta ħ) right·left)
    """
    kappa: HbarSeries
    left: str
    right: str
    beta: ExactScalar = field(default_factory=lambda: ExactScalar.of(0))


class CompositeDeriver:
    """
    Derives missing rules b·a from the definitions of composite generators
    through the graded Leibniz rule of the commutator
    """

    def __init__(self, definitions):
        self.__definitions = dict(definitions)

    @property
    def definitions(self):
        return dict(self.__definitions)

    def expansion(self, algebra, name):
        """
        The defining combination of a composite generator as an element
        """
        d = self.__definitions[name]
        u, v = algebra.gen(d.left), algebra.gen(d.right)
        return q_commutator(u, v, d.beta).scale(d.kappa)

    def definition_residuals(self, algebra):
        return {name: algebra.gen(name) - self.expansion(algebra, name) for name in self.__definitions}

    @staticmethod
    def _sign(x, y):
        return -1 if x.parity() and y.parity() else 1

    def _bracket_right(self, x, u, v):
        # [x, uv] = [x,u] v + σ u [x,v]
        return graded_commutator(x, u) * v + (u * graded_commutator(x, v)).scale(self._sign(x, u))

    def _bracket_left(self, u, v, y):
        # [uv, y] = u [v,y] + σ [u,y] v
        return u * graded_commutator(v, y) + (graded_commutator(u, y) * v).scale(self._sign(v, y))

    def __call__(self, algebra, b, a):
        table = algebra.table
        nb, na = table.name(b), table.name(a)
        order = algebra.order
        if na in self.__definitions:
            d = self.__definitions[na]
            x, u, v = algebra.gen(nb), algebra.gen(d.left), algebra.gen(d.right)
            twist = q_power(d.beta, order) * self._sign(u, v)
            bracket = self._bracket_right(x, u, v) - self._bracket_right(x, v, u).scale(twist)
        elif nb in self.__definitions:
            d = self.__definitions[nb]
            y, u, v = algebra.gen(na), algebra.gen(d.left), algebra.gen(d.right)
            twist = q_power(d.beta, order) * self._sign(u, v)
            bracket = self._bracket_left(u, v, y) - self._bracket_left(v, u, y).scale(twist)
        else:
            raise MissingRule(nb, na)
        return bracket.scale(d.kappa).terms


class AlgebraMap:
    """
    Even algebra map given on generators, extended multiplicatively
    """

    def __init__(self, source, target, images, name="map"):
        """
        Class constructor
        :param source: Algebra
        :param target: Algebra
        :param images: dict generator name -> AlgebraElement of target
        """
        missing = [n for n in source.table.names() if n not in images]
        if missing:
            raise UnknownGenerator("no image for {}".format(", ".join(missing)))
        self.source = source
        self.target = target
        self.name = name
        self.__images = {source.table.index(n): x for n, x in images.items()}
        self.__word_images = {(): target.one()}

    def _word_image(self, word):
        cached = self.__word_images.get(word)
        if cached is None:
            cached = self._word_image(word[:-1]) * self.__images[word[-1]]
            self.__word_images[word] = cached
        return cached

    def apply(self, x):
        result = self.target.zero()
        for w, c in x.terms.items():
            result = result + self._word_image(w).scale(c)
        return result

    __call__ = apply

    def apply_tensor(self, t):
        result = TensorElement(self.target, t.rank)
        for key, c in t.terms.items():
            factors = [self._word_image(w) for w in key]
            result = result + TensorElement.product(*factors).scale(c)
        return result

    def check_algebra_map(self):
        """
        φ(b)φ(a) = φ(rhs) for every rule b·a -> rhs of the source
        :return: CheckResult
        """
        self.source.ensure_all_rules()
        failures = []
        for rule in self.source.rules():
            b, a = rule.lhs
            lhs = self.apply(self.source.gen(b)) * self.apply(self.source.gen(a))
            if lhs != self.apply(self.source.rule_rhs(b, a)):
                failures.append("{}·{}".format(b, a))
        if failures:
            return CheckResult(self.name, FAIL, "relations fail: " + ", ".join(failures))
        return CheckResult(self.name, PASS, "all relations preserved")
