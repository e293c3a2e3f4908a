"""Exact Gaussian-rational scalars.

A :class:`Scalar` is ``re + im*i`` with both parts arbitrary-precision
rationals (``gmpy2.mpq``).  Every structure constant, functional value and
rank computation in the exact part of the library lives here.
"""

from __future__ import annotations

import re as _re
from fractions import Fraction
from numbers import Integral, Rational

from gmpy2 import is_square, isqrt, mpq

__all__ = ["Scalar", "ZERO", "ONE", "as_scalar", "parse_scalar"]

_MPQ_ZERO = mpq(0)


def _q(value) -> mpq:
    if isinstance(value, type(_MPQ_ZERO)):
        return value
    if isinstance(value, (Integral, Fraction)):
        return mpq(value)
    if isinstance(value, Rational):
        return mpq(int(value.numerator), int(value.denominator))
    if isinstance(value, str):
        return mpq(value.strip())
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a Fraction or a 'p/q' string")
    # gmpy2 mpz and friends
    return mpq(value)


class Scalar:
    """Exact complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _q(re)
        self.im = _q(im)

    # construction helpers -------------------------------------------------

    @classmethod
    def _raw(cls, re: mpq, im: mpq) -> "Scalar":
        s = object.__new__(cls)
        s.re = re
        s.im = im
        return s

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        o = as_scalar(other)
        return Scalar._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = as_scalar(other)
        return Scalar._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return as_scalar(other) - self

    def __mul__(self, other):
        o = as_scalar(other)
        if not self.im and not o.im:
            return Scalar._raw(self.re * o.re, _MPQ_ZERO)
        return Scalar._raw(self.re * o.re - self.im * o.im,
                           self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = as_scalar(other)
        if not o:
            raise ZeroDivisionError("division by exact zero")
        if not o.im:
            return Scalar._raw(self.re / o.re, self.im / o.re)
        d = o.re * o.re + o.im * o.im
        return Scalar._raw((self.re * o.re + self.im * o.im) / d,
                           (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other):
        return as_scalar(other) / self

    def __neg__(self):
        return Scalar._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, Integral):
            raise TypeError("only integer powers are exact")
        if k < 0:
            return ONE / (self ** (-k))
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # comparisons ----------------------------------------------------------

    def __eq__(self, other):
        try:
            o = as_scalar(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(Fraction(int(self.re.numerator), int(self.re.denominator)))
        return hash((int(self.re.numerator), int(self.re.denominator),
                     int(self.im.numerator), int(self.im.denominator)))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    # misc -----------------------------------------------------------------

    @property
    def is_real(self) -> bool:
        return not self.im

    def conjugate(self) -> "Scalar":
        return Scalar._raw(self.re, -self.im)

    def abs2(self) -> mpq:
        """Exact squared modulus."""
        return self.re * self.re + self.im * self.im

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def exact_sqrt(self) -> "Scalar | None":
        """Square root inside the Gaussian rationals, or ``None`` if it leaves them."""
        if not self:
            return ZERO
        a, b = self.re, self.im
        if not b:
            r = _rational_sqrt(abs(a))
            if r is None:
                return None
            return Scalar._raw(r, _MPQ_ZERO) if a > 0 else Scalar._raw(_MPQ_ZERO, r)
        modulus = _rational_sqrt(a * a + b * b)
        if modulus is None:
            return None
        x = _rational_sqrt((a + modulus) / 2)
        if x is None or not x:
            return None
        y = b / (2 * x)
        return Scalar._raw(x, y)

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        return format_scalar(self)


def _rational_sqrt(q: mpq) -> mpq | None:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    if is_square(n) and is_square(d):
        return mpq(isqrt(n), isqrt(d))
    return None


ZERO = Scalar._raw(mpq(0), mpq(0))
ONE = Scalar._raw(mpq(1), mpq(0))
I = Scalar._raw(mpq(0), mpq(1))


def as_scalar(value) -> Scalar:
    """Coerce ints, rationals, ``'p/q'`` strings and Scalars to :class:`Scalar`."""
    if isinstance(value, Scalar):
        return value
    if isinstance(value, str):
        return parse_scalar(value)
    if isinstance(value, complex):
        raise TypeError("complex floats are not exact")
    return Scalar._raw(_q(value), _MPQ_ZERO)


def _fmt_q(q: mpq) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(s: Scalar) -> str:
    """Render as ``p/q``, ``r/s i`` or ``p/q+r/s i``."""
    if not s.im:
        return _fmt_q(s.re)
    im = _fmt_q(abs(s.im)) + " i"
    if not s.re:
        return ("-" if s.im < 0 else "") + im
    return _fmt_q(s.re) + ("-" if s.im < 0 else "+") + im


_RAT = r"[+-]?\d+(?:/\d+)?"
_COMPLEX_RE = _re.compile(
    rf"^\s*(?:(?P<re>{_RAT})\s*(?:(?P<sign>[+-])\s*(?P<im>\d+(?:/\d+)?)?\s*\*?\s*i)?"
    rf"|(?P<im_only>[+-]?(?:\d+(?:/\d+)?)?)\s*\*?\s*i)\s*$"
)


def parse_scalar(text: str) -> Scalar:
    """Parse ``"p/q"``, ``"p/q+r/s i"``, ``"r/s i"``, ``"-i"`` exactly.

    Raises:
        ValueError: if the text is not one of the accepted forms.
    """
    m = _COMPLEX_RE.match(text)
    if not m:
        raise ValueError(f"not an exact scalar: {text!r}")
    if m.group("re") is not None:
        real = mpq(m.group("re"))
        if m.group("sign") is None:
            return Scalar._raw(real, _MPQ_ZERO)
        imag = mpq(m.group("im")) if m.group("im") else mpq(1)
        if m.group("sign") == "-":
            imag = -imag
        return Scalar._raw(real, imag)
    im_text = m.group("im_only")
    if im_text in (None, "", "+"):
        return Scalar._raw(_MPQ_ZERO, mpq(1))
    if im_text == "-":
        return Scalar._raw(_MPQ_ZERO, mpq(-1))
    return Scalar._raw(_MPQ_ZERO, mpq(im_text))
