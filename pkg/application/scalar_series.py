from fractions import Fraction
from math import factorial

from application.errors import ZeroConstantTerm, NonzeroConstantTerm

HBAR_SYMBOL = 'ħ'
TAYLOR_KINDS = ('exp', 'sinh', 'cosh', 'cosh-1')


class ExactScalar:
    """
    Gaussian rational re + i*im with exact arithmetic
    """

    __slots__ = ('re', 'im')

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def _make(cls, re, im):
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    @classmethod
    def of(cls, value):
        """
        Convert an int, Fraction or ExactScalar into an ExactScalar
        :param value: the value to convert
        :return: ExactScalar
        """
        if isinstance(value, ExactScalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls._make(Fraction(value), Fraction(0))
        raise TypeError("cannot convert {!r} to an exact scalar".format(value))

    """ Arithmetic """

    def __add__(self, other):
        try:
            other = ExactScalar.of(other)
        except TypeError:
            return NotImplemented
        return ExactScalar._make(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = ExactScalar.of(other)
        except TypeError:
            return NotImplemented
        return ExactScalar._make(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return ExactScalar.of(other) - self

    def __mul__(self, other):
        try:
            other = ExactScalar.of(other)
        except TypeError:
            return NotImplemented
        if not self.im and not other.im:
            return ExactScalar._make(self.re * other.re, self.im)
        return ExactScalar._make(self.re * other.re - self.im * other.im,
                                 self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = ExactScalar.of(other)
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError("division of an exact scalar by zero")
        if not other.im:
            return ExactScalar._make(self.re / other.re, self.im / other.re)
        return self * ExactScalar._make(other.re / norm, -other.im / norm)

    def __rtruediv__(self, other):
        return ExactScalar.of(other) / self

    def __neg__(self):
        return ExactScalar._make(-self.re, -self.im)

    def __pow__(self, power):
        if power < 0:
            return (ExactScalar.of(1) / self) ** (-power)
        result = ExactScalar.of(1)
        for _ in range(power):
            result = result * self
        return result

    def conjugate(self):
        return ExactScalar._make(self.re, -self.im)

    """ Comparison """

    def __eq__(self, other):
        try:
            other = ExactScalar.of(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def magnitude(self):
        """
        Max-norm of the scalar, used for residual sizes
        :return: Fraction max(|re|, |im|)
        """
        return max(abs(self.re), abs(self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return "ExactScalar({})".format(self)

    def __str__(self):
        if not self.im:
            return str(self.re)
        if self.im == 1:
            imag = 'i'
        elif self.im == -1:
            imag = '-i'
        else:
            imag = "{}i".format(self.im)
        if not self.re:
            return imag
        if imag.startswith('-'):
            return "{}{}".format(self.re, imag)
        return "{}+{}".format(self.re, imag)


ZERO = ExactScalar.of(0)
ONE = ExactScalar.of(1)
I = ExactScalar(0, 1)


class HbarSeries:
    """
    Power series in ħ truncated at order N, with exact Gaussian rational coefficients
    """

    __slots__ = ('coeffs', 'order', 'valuation')

    def __init__(self, coeffs, order=None):
        coeffs = [ExactScalar.of(c) for c in coeffs]
        if order is None:
            order = max(len(coeffs) - 1, 0)
        coeffs = coeffs[:order + 1] + [ZERO] * (order + 1 - len(coeffs))
        self._assign(tuple(coeffs), order)

    def _assign(self, coeffs, order):
        self.coeffs = coeffs
        self.order = order
        self.valuation = next((k for k, c in enumerate(coeffs) if c), None)

    @classmethod
    def _make(cls, coeffs, order):
        obj = object.__new__(cls)
        obj._assign(coeffs, order)
        return obj

    @classmethod
    def zero(cls, order):
        return cls._make((ZERO,) * (order + 1), order)

    @classmethod
    def one(cls, order):
        return cls.constant(ONE, order)

    @classmethod
    def constant(cls, value, order):
        return cls._make((ExactScalar.of(value),) + (ZERO,) * order, order)

    @classmethod
    def monomial(cls, value, power, order):
        """
        value * ħ^power truncated at order
        """
        coeffs = [ZERO] * (order + 1)
        if power <= order:
            coeffs[power] = ExactScalar.of(value)
        return cls._make(tuple(coeffs), order)

    @classmethod
    def hbar(cls, order):
        return cls.monomial(ONE, 1, order)

    """ Properties """

    def is_zero(self):
        return self.valuation is None

    @property
    def constant_term(self):
        return self.coeffs[0]

    def magnitude(self):
        return max((c.magnitude() for c in self.coeffs), default=Fraction(0))

    def truncate(self, order):
        if order >= self.order:
            return self
        return HbarSeries._make(self.coeffs[:order + 1], order)

    def shift(self, power):
        """
        Multiply by ħ^power. A negative power divides and needs valuation >= -power;
        the known order then drops by the same amount.
        """
        if power >= 0:
            coeffs = ((ZERO,) * power + self.coeffs)[:self.order + 1]
            return HbarSeries._make(coeffs, self.order)
        drop = -power
        if self.valuation is not None and self.valuation < drop:
            raise ZeroConstantTerm("cannot divide {} by ħ^{}".format(self, drop))
        return HbarSeries._make(self.coeffs[drop:], self.order - drop)

    def reflect(self):
        """
        The series with ħ replaced by -ħ
        """
        return HbarSeries._make(tuple(-c if k % 2 else c for k, c in enumerate(self.coeffs)), self.order)

    """ Arithmetic """

    @staticmethod
    def _coerce(other, order):
        if isinstance(other, HbarSeries):
            return other
        return HbarSeries.constant(other, order)

    def __add__(self, other):
        if not isinstance(other, HbarSeries):
            try:
                other = ExactScalar.of(other)
            except TypeError:
                return NotImplemented
            return HbarSeries._make((self.coeffs[0] + other,) + self.coeffs[1:], self.order)
        order = min(self.order, other.order)
        return HbarSeries._make(tuple(a + b for a, b in zip(self.coeffs[:order + 1], other.coeffs)), order)

    __radd__ = __add__

    def __neg__(self):
        return HbarSeries._make(tuple(-c for c in self.coeffs), self.order)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, HbarSeries):
            try:
                other = ExactScalar.of(other)
            except TypeError:
                return NotImplemented
            if not other:
                return HbarSeries.zero(self.order)
            return HbarSeries._make(tuple(c * other for c in self.coeffs), self.order)
        return self.mul_to(other, min(self.order, other.order))

    __rmul__ = __mul__

    def mul_to(self, other, order):
        """
        Product truncated at the given order. The caller guarantees that other is
        known up to order - valuation(self), which may exceed what other.order shows
        for the operands themselves.
        :param other: HbarSeries
        :param order: target truncation order
        :return: HbarSeries of the given order
        """
        if self.valuation is None or other.valuation is None:
            return HbarSeries.zero(order)
        out = [ZERO] * (order + 1)
        a, b = self.coeffs, other.coeffs
        for i in range(self.valuation, min(len(a), order + 1)):
            ai = a[i]
            if not ai:
                continue
            for j in range(other.valuation, min(len(b), order + 1 - i)):
                bj = b[j]
                if bj:
                    out[i + j] = out[i + j] + ai * bj
        return HbarSeries._make(tuple(out), order)

    def __truediv__(self, other):
        if isinstance(other, HbarSeries):
            return self * other.inverse()
        return self * (ONE / ExactScalar.of(other))

    def __pow__(self, power):
        result = HbarSeries.one(self.order)
        for _ in range(power):
            result = result * self
        return result

    def inverse(self):
        return series_inverse(self)

    """ Comparison """

    def __eq__(self, other):
        if not isinstance(other, HbarSeries):
            try:
                other = HbarSeries.constant(other, self.order)
            except TypeError:
                return NotImplemented
        order = min(self.order, other.order)
        return self.coeffs[:order + 1] == other.coeffs[:order + 1]

    __hash__ = None

    def __repr__(self):
        return "HbarSeries([{}], order={})".format(", ".join(str(c) for c in self.coeffs), self.order)

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                parts.append("({})".format(c))
            elif k == 1:
                parts.append("({}){}".format(c, HBAR_SYMBOL))
            else:
                parts.append("({}){}^{}".format(c, HBAR_SYMBOL, k))
        body = " + ".join(parts) if parts else "0"
        return "{} + O({}^{})".format(body, HBAR_SYMBOL, self.order + 1)


""" Ring operations """


def series_add(a, b):
    return a + b


def series_mul(a, b):
    return a * b


def series_neg(a):
    return -a


def series_inverse(a):
    """
    Multiplicative inverse of a series with nonzero constant term
    :param a: HbarSeries
    :return: HbarSeries b with a*b = 1 up to a.order
    """
    a0 = a.coeffs[0]
    if not a0:
        raise ZeroConstantTerm("series {} has no inverse: constant term is zero".format(a))
    inv0 = ONE / a0
    out = [inv0]
    for n in range(1, a.order + 1):
        acc = ZERO
        for k in range(1, n + 1):
            if a.coeffs[k]:
                acc = acc + a.coeffs[k] * out[n - k]
        out.append(-(acc * inv0))
    return HbarSeries._make(tuple(out), a.order)


def series_exp(a):
    """
    exp(a) for a series without constant term
    """
    if a.coeffs[0]:
        raise NonzeroConstantTerm("exp needs a series without constant term, got {}".format(a))
    out = [ONE]
    for n in range(1, a.order + 1):
        acc = ZERO
        for k in range(1, n + 1):
            if a.coeffs[k]:
                acc = acc + k * a.coeffs[k] * out[n - k]
        out.append(acc / n)
    return HbarSeries._make(tuple(out), a.order)


def series_log1p(a):
    """
    log(1 + a) for a series without constant term
    """
    if a.coeffs[0]:
        raise NonzeroConstantTerm("log1p needs a series without constant term, got {}".format(a))
    out = [ZERO]
    for n in range(1, a.order + 1):
        acc = n * a.coeffs[n]
        for k in range(1, n):
            if out[k] and a.coeffs[n - k]:
                acc = acc - k * out[k] * a.coeffs[n - k]
        out.append(acc / n)
    return HbarSeries._make(tuple(out), a.order)


""" Closed forms in ħ """


def taylor_in_hbar(kind, alpha, order, shift=0):
    """
    Taylor data of f(alpha*ħ*Z) / ħ^shift as a polynomial in a formal central Z.
    :param kind: one of 'exp', 'sinh', 'cosh', 'cosh-1'
    :param alpha: exact scalar (complex allowed)
    :param order: truncation order in ħ
    :param shift: power of ħ divided out
    :return: list of (n, HbarSeries) meaning sum_n coefficient * Z^n
    """
    if kind not in TAYLOR_KINDS:
        raise ValueError("unknown Taylor kind: {}".format(kind))
    alpha = ExactScalar.of(alpha)
    terms = []
    for n in range(0, order + shift + 1):
        if kind == 'sinh' and n % 2 == 0:
            continue
        if kind == 'cosh' and n % 2 == 1:
            continue
        if kind == 'cosh-1' and (n % 2 == 1 or n == 0):
            continue
        value = alpha ** n / factorial(n)
        if not value:
            continue
        if n < shift:
            raise ZeroConstantTerm("{}(ħZ)/ħ^{} has a pole".format(kind, shift))
        terms.append((n, HbarSeries.monomial(value, n - shift, order)))
    return terms


def scalar_function(kind, alpha, order, shift=0):
    """
    f(alpha*ħ) / ħ^shift as a series, e.g. scalar_function('sinh', 1, N, 1) = sinh(ħ)/ħ
    """
    result = HbarSeries.zero(order)
    for _, coeff in taylor_in_hbar(kind, alpha, order, shift):
        result = result + coeff
    return result


def q_power(alpha, order):
    """
    q^alpha = e^(alpha*ħ)
    """
    return scalar_function('exp', alpha, order)


def q_number(n, alpha, order):
    """
    [n] = (1 - q^n)/(1 - q) at q = e^(alpha*ħ); equals n at alpha = 0
    """
    result = HbarSeries.zero(order)
    if n >= 0:
        for k in range(n):
            result = result + q_power(ExactScalar.of(alpha) * k, order)
    else:
        for k in range(1, -n + 1):
            result = result - q_power(-ExactScalar.of(alpha) * k, order)
    return result


def q_factorial(n, alpha, order):
    result = HbarSeries.one(order)
    for k in range(1, n + 1):
        result = result * q_number(k, alpha, order)
    return result


def qdilog_coefficients(n_max, alpha, order):
    """
    Coefficients c_n = (1-q)^(n-1) / (n [n]) of X^n in log exp_q[X], n = 1..n_max
    """
    one_minus_q = HbarSeries.one(order) - q_power(alpha, order)
    coefficients = []
    power = HbarSeries.one(order)
    for n in range(1, n_max + 1):
        coefficients.append(power / (q_number(n, alpha, order) * n))
        power = power * one_minus_q
    return coefficients


def dilog_series(n_max):
    """
    Li2(x) = sum_{n>=1} x^n / n^2, coefficients of x^1 .. x^n_max
    """
    return [ExactScalar.of(Fraction(1, n * n)) for n in range(1, n_max + 1)]


def log1m_over_x_series(n_max):
    """
    log(1-x)/x = -sum_{n>=0} x^n / (n+1), coefficients of x^0 .. x^n_max
    """
    return [ExactScalar.of(Fraction(-1, n + 1)) for n in range(0, n_max + 1)]
