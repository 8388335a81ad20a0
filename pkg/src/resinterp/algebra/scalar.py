"""Exact Gaussian rationals, the coefficient field Q(i)."""

from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq

_MPQ = type(mpq(0))


def _as_mpq(x):
    if isinstance(x, _MPQ):
        return x
    if isinstance(x, (int, Fraction, Rational, str)):
        return mpq(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


class GaussianRational:
    """A complex number ``re + im*i`` with exact rational parts.

    Instances are immutable and hash like the equal ``int``/``Fraction``
    when the imaginary part vanishes.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im:
                raise TypeError("imaginary part given twice")
            re, im = re.re, re.im
        object.__setattr__(self, "re", _as_mpq(re))
        object.__setattr__(self, "im", _as_mpq(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def _raw(cls, re, im):
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    def __reduce__(self):
        return (GaussianRational, (Fraction(int(self.re.numerator), int(self.re.denominator)),
                                   Fraction(int(self.im.numerator), int(self.im.denominator))))

    # -- predicates -----------------------------------------------------
    def is_real(self):
        return not self.im

    def is_integer(self):
        return not self.im and self.re.denominator == 1

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational._raw(other.re - self.re, other.im - self.im)

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational._raw(a * c, b)
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self):
        a, b = self.re, self.im
        if not b:
            if not a:
                raise ZeroDivisionError("GaussianRational division by zero")
            return GaussianRational._raw(1 / a, b)
        n = a * a + b * b
        return GaussianRational._raw(a / n, -b / n)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self):
        return GaussianRational._raw(self.re, -self.im)

    # -- comparison / hashing ------------------------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    # -- text -----------------------------------------------------------
    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"GaussianRational('{format_scalar(self)}')"


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, _MPQ, Fraction)):
        return GaussianRational._raw(mpq(x), _ZERO_Q)
    if isinstance(x, complex):
        return NotImplemented
    return NotImplemented


def as_scalar(x):
    """Coerce ``int``, ``Fraction``, ``mpq`` or ``GaussianRational`` to a scalar."""
    y = _coerce(x)
    if y is NotImplemented:
        raise TypeError(f"{x!r} is not an exact Q(i) scalar")
    return y


def _format_rational(q):
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(z):
    """Canonical text ``a/b+c/d*i`` with no spaces; ``i`` alone for unit imaginary."""
    re, im = z.re, z.im
    if not im:
        return _format_rational(re)
    if im == 1:
        imag = "i"
    elif im == -1:
        imag = "-i"
    else:
        imag = _format_rational(im) + "*i"
    if not re:
        return imag
    if imag.startswith("-"):
        return _format_rational(re) + imag
    return _format_rational(re) + "+" + imag


_ZERO_Q = mpq(0)
ZERO = GaussianRational._raw(mpq(0), mpq(0))
ONE = GaussianRational._raw(mpq(1), mpq(0))
I = GaussianRational._raw(mpq(0), mpq(1))
