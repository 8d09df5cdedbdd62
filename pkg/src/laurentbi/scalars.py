"""Coefficient domains.

Two domains are supported:

* ``EXACT`` -- Gaussian rationals, i.e. complex numbers whose real and
  imaginary parts are :class:`fractions.Fraction`.  Represented by :class:`QQi`.
* ``FLOAT`` -- Python ``complex`` (two IEEE binary64 values).

Mixing domains is an error; promotion EXACT -> FLOAT is always explicit.
"""

from __future__ import annotations

import enum
import numbers
from fractions import Fraction

from .errors import DomainMismatch


class Domain(str, enum.Enum):
    EXACT = "exact"
    FLOAT = "float"


class QQi:
    """Exact complex rational ``re + im*i``."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, QQi):
            if im:
                raise TypeError("QQi(QQi, im) is ambiguous")
            self.re, self.im = re.re, re.im
            return
        self.re = _to_fraction(re)
        self.im = _to_fraction(im)

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = _lift(other)
        if o is NotImplemented:
            return o
        return _mk(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _lift(other)
        if o is NotImplemented:
            return o
        return _mk(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = _lift(other)
        if o is NotImplemented:
            return o
        if not self.im and not o.im:
            return _mk(self.re * o.re, Fraction(0))
        return _mk(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _lift(other)
        if o is NotImplemented:
            return o
        if not o.im:
            if not o.re:
                raise ZeroDivisionError("QQi division by zero")
            return _mk(self.re / o.re, self.im / o.re)
        den = o.re * o.re + o.im * o.im
        return _mk(
            (self.re * o.re + self.im * o.im) / den,
            (self.im * o.re - self.re * o.im) / den,
        )

    def __rtruediv__(self, other):
        o = _lift(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, n):
        if not isinstance(n, numbers.Integral):
            raise DomainMismatch("QQi only supports integer powers")
        if n < 0:
            return QQi(1) / (self ** (-n))
        result, base = QQi(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __neg__(self):
        return _mk(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self):
        return _mk(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __abs__(self):
        # Rational when real or purely imaginary, float otherwise.
        if not self.im:
            return abs(self.re)
        if not self.re:
            return abs(self.im)
        return abs(complex(self))

    # -- comparisons / conversions -----------------------------------------
    def __eq__(self, other):
        o = _lift(other)
        if o is NotImplemented:
            if isinstance(other, complex):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if not self.im:
            return f"QQi({self.re})"
        return f"QQi({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"


def _mk(re: Fraction, im: Fraction) -> QQi:
    q = QQi.__new__(QQi)
    q.re, q.im = re, im
    return q


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, numbers.Integral):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, numbers.Rational):
        return Fraction(x.numerator, x.denominator)
    raise DomainMismatch(f"cannot use {type(x).__name__} {x!r} as an exact rational")


def _lift(x):
    if isinstance(x, QQi):
        return x
    if isinstance(x, (numbers.Rational)):
        return _mk(_to_fraction(x), Fraction(0))
    return NotImplemented


ZERO_Q = QQi(0)
ONE_Q = QQi(1)


def is_exact_scalar(x) -> bool:
    return isinstance(x, (QQi, numbers.Rational)) and not isinstance(x, bool)


def coerce(x, domain: Domain):
    """Convert a scalar into ``domain``; floats never silently become exact."""
    if domain is Domain.EXACT:
        if isinstance(x, QQi):
            return x
        if isinstance(x, numbers.Rational):
            return _mk(_to_fraction(x), Fraction(0))
        raise DomainMismatch(
            f"{type(x).__name__} {x!r} is not exact; promote the series to FLOAT first"
        )
    if isinstance(x, QQi):
        return complex(x)
    return complex(x)


def zero(domain: Domain):
    return ZERO_Q if domain is Domain.EXACT else 0j


def one(domain: Domain):
    return ONE_Q if domain is Domain.EXACT else 1 + 0j


def domain_of_scalars(values) -> Domain:
    """EXACT iff every value is an exact rational (or QQi)."""
    return Domain.EXACT if all(is_exact_scalar(v) for v in values) else Domain.FLOAT


def rational_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s) -> Fraction:
    if isinstance(s, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    return Fraction(str(s).strip())


def parse_exact_complex(text: str) -> QQi:
    """Parse ``"a"``, ``"a+bj"``, ``"a-bj"``, ``"bj"`` with rational a, b."""
    t = text.strip().replace(" ", "").replace("i", "j")
    if not t.endswith("j"):
        return QQi(Fraction(t))
    body = t[:-1]
    # split at the last sign that is not at position 0 and not after 'e'/'/'
    cut = -1
    for k in range(len(body) - 1, 0, -1):
        if body[k] in "+-" and body[k - 1] not in "eE":
            cut = k
            break
    if cut < 0:
        im = body if body not in ("", "+", "-") else body + "1"
        return QQi(0, Fraction(im))
    re_part, im_part = body[:cut], body[cut:]
    if im_part in ("+", "-"):
        im_part += "1"
    return QQi(Fraction(re_part), Fraction(im_part))


def parse_float_complex(text: str) -> complex:
    return complex(text.strip().replace(" ", "").replace("i", "j"))
