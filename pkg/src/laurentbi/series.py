"""Truncated Laurent series at infinity.

A :class:`LaurentSeries` stores the coefficients of degrees ``top`` down to
``-depth`` of an (in general infinite) expansion

    a_top z^top + ... + a_0 + a_{-1}/z + a_{-2}/z^2 + ...

Only the coefficients of degree ``>= -valid_to`` are guaranteed to be exact
images of the underlying infinite object; the remaining stored coefficients
were computed from truncated data.  Every operation propagates ``valid_to``
with the rules below (``t`` = top degree, ``d`` = depth, ``v`` = valid_to).

=============  ==============================  ============================
operation      stored depth                    valid_to
=============  ==============================  ============================
``a + b``      ``min(d1, d2)``                 ``min(v1, v2)``
``a * b``      ``min(d1 - t2, d2 - t1)``      ``min(v1 - t2, v2 - t1)``
``1 / a``      ``d + 2t``                      ``v + 2t``
``a'``         ``d``                           ``min(v + 1, d)``
``z a'``       ``d``                           ``v``
log/exp/pow    ``d``                           ``v``
=============  ==============================  ============================

``valid_to`` is always clamped to the stored depth.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from .errors import BadNormalization, DomainMismatch, NotInvertible, DepthExhausted
from .scalars import (
    Domain,
    QQi,
    coerce,
    domain_of_scalars,
    is_exact_scalar,
    one,
    parse_rational,
    rational_str,
    zero,
)

DEFAULT_DEPTH = 16
# |constant - 1| allowed before a FLOAT series counts as log/pow-normalized.
FLOAT_NORMALIZATION_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class LaurentSeries:
    top: int
    depth: int
    coeffs: tuple
    valid_to: int
    domain: Domain

    def __post_init__(self):
        if self.depth < 0:
            raise ValueError("depth must be >= 0")
        if len(self.coeffs) != self.top + self.depth + 1:
            raise ValueError(
                f"expected {self.top + self.depth + 1} coefficients, got {len(self.coeffs)}"
            )
        if self.valid_to > self.depth:
            raise ValueError("valid_to cannot exceed depth")

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_terms(
        cls,
        terms: Mapping[int, object],
        depth: int = DEFAULT_DEPTH,
        domain: Domain | None = None,
        valid_to: int | None = None,
    ) -> "LaurentSeries":
        """Build from ``{degree: coefficient}``; unspecified degrees are zero.

        The result is treated as exact down to ``-depth`` unless ``valid_to``
        says otherwise.
        """
        if domain is None:
            domain = domain_of_scalars(terms.values())
        nonzero = [k for k, c in terms.items() if c != 0]
        top = max(nonzero) if nonzero else 0
        if any(k < -depth for k in nonzero):
            raise ValueError("term below the requested depth")
        z0 = zero(domain)
        coeffs = [z0] * (top + depth + 1)
        for k, c in terms.items():
            if k >= -depth and c != 0:
                coeffs[top - k] = coerce(c, domain)
        return _make(top, depth, coeffs, depth if valid_to is None else valid_to, domain)

    @classmethod
    def from_inverse_powers(
        cls,
        values: Iterable,
        depth: int | None = None,
        domain: Domain | None = None,
        valid_to: int | None = None,
    ) -> "LaurentSeries":
        """``values[n]`` is the coefficient of ``z^(-n)``, starting at n = 0."""
        values = list(values)
        if depth is None:
            depth = len(values) - 1
        terms = {-n: c for n, c in enumerate(values) if n <= depth}
        return cls.from_terms(terms, depth=depth, domain=domain, valid_to=valid_to)

    @classmethod
    def constant(cls, c, depth: int = DEFAULT_DEPTH, domain: Domain | None = None):
        return cls.from_terms({0: c}, depth=depth, domain=domain)

    @classmethod
    def monomial(cls, degree: int, c=1, depth: int = DEFAULT_DEPTH, domain: Domain | None = None):
        return cls.from_terms({degree: c}, depth=depth, domain=domain)

    @classmethod
    def zero_series(cls, depth: int = DEFAULT_DEPTH, domain: Domain = Domain.EXACT):
        return _make(0, depth, [zero(domain)] * (depth + 1), depth, domain)

    # -- access -------------------------------------------------------------
    def __getitem__(self, degree: int):
        if degree > self.top:
            return zero(self.domain)
        if degree < -self.depth:
            raise IndexError(f"degree {degree} is below the stored depth {self.depth}")
        return self.coeffs[self.top - degree]

    def items(self):
        """Yield ``(degree, coefficient)`` from ``top`` downwards."""
        for i, c in enumerate(self.coeffs):
            yield self.top - i, c

    def inverse_power_coeffs(self, n_max: int | None = None) -> list:
        """Coefficients of ``z^0, z^-1, ..., z^-n_max`` (top must be <= 0)."""
        if self.top > 0:
            raise BadNormalization("series has positive powers")
        n_max = self.depth if n_max is None else n_max
        return [self[-n] for n in range(n_max + 1)]

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    @property
    def leading(self):
        return self.coeffs[0]

    # -- conversions --------------------------------------------------------
    def to_float(self) -> "LaurentSeries":
        if self.domain is Domain.FLOAT:
            return self
        return LaurentSeries(
            self.top, self.depth, tuple(complex(c) for c in self.coeffs), self.valid_to, Domain.FLOAT
        )

    def truncate(self, depth: int) -> "LaurentSeries":
        if depth > self.depth:
            raise DepthExhausted(f"cannot extend depth {self.depth} to {depth}")
        n = self.top + depth + 1
        if n <= 0:
            return LaurentSeries.zero_series(depth, self.domain)
        return _make(self.top, depth, list(self.coeffs[:n]), min(self.valid_to, depth), self.domain)

    def with_valid_to(self, valid_to: int) -> "LaurentSeries":
        return LaurentSeries(self.top, self.depth, self.coeffs, min(valid_to, self.depth), self.domain)

    def max_abs_diff(self, other: "LaurentSeries", min_degree: int | None = None) -> float:
        """Largest |a_n - b_n| over degrees >= min_degree (default: both valid)."""
        if min_degree is None:
            min_degree = -min(self.valid_to, other.valid_to)
        lo = max(min_degree, -self.depth, -other.depth)
        hi = max(self.top, other.top)
        return max(
            (abs(complex(self[k]) - complex(other[k])) for k in range(lo, hi + 1)),
            default=0.0,
        )

    # -- ring operations ----------------------------------------------------
    def __add__(self, other):
        return add(self, _as_series(other, self))

    __radd__ = __add__

    def __sub__(self, other):
        return add(self, -_as_series(other, self))

    def __rsub__(self, other):
        return add(_as_series(other, self), -self)

    def __neg__(self):
        return LaurentSeries(self.top, self.depth, tuple(-c for c in self.coeffs), self.valid_to, self.domain)

    def __mul__(self, other):
        if isinstance(other, LaurentSeries):
            return multiply(self, other)
        return scale(self, other)

    def __rmul__(self, other):
        return scale(self, other)

    def __truediv__(self, other):
        if isinstance(other, LaurentSeries):
            return multiply(self, reciprocal(other))
        return scale(self, one(self.domain) / coerce(other, self.domain))

    def __rtruediv__(self, other):
        return scale(reciprocal(self), other)

    def __pow__(self, n):
        if isinstance(n, numbers.Integral):
            return int_power(self, int(n))
        return pow_real(self, n)

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (
            self.domain is other.domain
            and self.top == other.top
            and self.depth == other.depth
            and self.valid_to == other.valid_to
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.top, self.depth, self.valid_to, self.domain, self.coeffs))

    def same_coefficients(self, other: "LaurentSeries", min_degree: int | None = None) -> bool:
        """Exact coefficient equality over degrees >= min_degree."""
        if min_degree is None:
            min_degree = -min(self.valid_to, other.valid_to)
        lo = max(min_degree, -self.depth, -other.depth)
        return all(self[k] == other[k] for k in range(lo, max(self.top, other.top) + 1))

    # -- analysis -----------------------------------------------------------
    def derivative(self):
        return derivative(self)

    def z_derivative(self):
        return z_derivative(self)

    def reciprocal(self):
        return reciprocal(self)

    def log(self):
        return log_series(self)

    def exp(self):
        return exp_series(self)

    def __call__(self, z):
        return eval_at(self, z)

    def __repr__(self):
        terms = ", ".join(f"{k}: {c}" for k, c in self.items() if c != 0)
        return (
            f"LaurentSeries({{{terms}}}, top={self.top}, depth={self.depth}, "
            f"valid_to={self.valid_to}, domain={self.domain.value})"
        )

    # -- serialization ------------------------------------------------------
    def to_json_obj(self) -> dict:
        rows = []
        for k, c in self.items():
            if self.domain is Domain.EXACT:
                rows.append([k, rational_str(c.re), rational_str(c.im)])
            else:
                rows.append([k, c.real, c.imag])
        return {
            "coeffs": rows,
            "depth": self.depth,
            "domain": self.domain.value,
            "top": self.top,
            "valid_to": self.valid_to,
        }

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "LaurentSeries":
        domain = Domain(obj["domain"])
        depth = int(obj["depth"])
        top = int(obj["top"])
        terms = {}
        for row in obj["coeffs"]:
            k, re, im = row
            if domain is Domain.EXACT:
                terms[int(k)] = QQi(parse_rational(re), parse_rational(im))
            else:
                terms[int(k)] = complex(float(re), float(im))
        z0 = zero(domain)
        coeffs = [terms.get(k, z0) for k in range(top, -depth - 1, -1)]
        if any(k > top or k < -depth for k in terms):
            raise ValueError("coefficient outside the declared degree window")
        return _make(top, depth, coeffs, int(obj.get("valid_to", depth)), domain)


# ---------------------------------------------------------------------------
# construction helpers


def _make(top: int, depth: int, coeffs: list, valid_to: int, domain: Domain) -> LaurentSeries:
    """Normalize leading zeros and build the immutable series."""
    i = 0
    while i < len(coeffs) and coeffs[i] == 0:
        i += 1
    if i == len(coeffs):
        return LaurentSeries(0, depth, tuple([zero(domain)] * (depth + 1)), depth, domain)
    if i:
        coeffs = coeffs[i:]
        top -= i
    return LaurentSeries(top, depth, tuple(coeffs), min(valid_to, depth), domain)


def _check_domains(a: LaurentSeries, b: LaurentSeries):
    if a.domain is not b.domain:
        raise DomainMismatch(f"{a.domain.value} vs {b.domain.value}; promote explicitly with to_float()")


def _as_series(x, like: LaurentSeries) -> LaurentSeries:
    if isinstance(x, LaurentSeries):
        return x
    return LaurentSeries.from_terms({0: coerce(x, like.domain)}, depth=like.depth, domain=like.domain)


def _conv(a, b, n_out: int, domain: Domain) -> list:
    if domain is Domain.FLOAT:
        return np.convolve(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))[:n_out].tolist()
    out = []
    la, lb = len(a), len(b)
    for k in range(n_out):
        acc = 0
        for i in range(max(0, k - lb + 1), min(k, la - 1) + 1):
            ai = a[i]
            if ai:
                acc = ai * b[k - i] + acc
        out.append(acc if isinstance(acc, QQi) else QQi(acc))
    return out


# ---------------------------------------------------------------------------
# operations


def add(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    _check_domains(a, b)
    top = max(a.top, b.top)
    depth = min(a.depth, b.depth)
    coeffs = [a[k] + b[k] for k in range(top, -depth - 1, -1)]
    return _make(top, depth, coeffs, min(a.valid_to, b.valid_to), a.domain)


def scale(a: LaurentSeries, c) -> LaurentSeries:
    c = coerce(c, a.domain)
    return _make(a.top, a.depth, [c * x for x in a.coeffs], a.valid_to, a.domain)


def multiply(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    _check_domains(a, b)
    top = a.top + b.top
    depth = min(a.depth - b.top, b.depth - a.top)
    if depth < 0:
        raise DepthExhausted("product has no coefficient window left")
    coeffs = _conv(a.coeffs, b.coeffs, top + depth + 1, a.domain)
    valid = min(a.valid_to - b.top, b.valid_to - a.top)
    return _make(top, depth, coeffs, valid, a.domain)


def int_power(a: LaurentSeries, n: int) -> LaurentSeries:
    if n < 0:
        return int_power(reciprocal(a), -n)
    result = LaurentSeries.constant(1, depth=a.depth, domain=a.domain)
    base = a
    while n:
        if n & 1:
            result = multiply(result, base)
        n >>= 1
        if n:
            base = multiply(base, base)
    return result


def shift(a: LaurentSeries, k: int) -> LaurentSeries:
    """Multiply by the exact monomial ``z^k``."""
    if a.depth - k < 0:
        raise DepthExhausted("shift leaves no stored coefficients")
    return LaurentSeries(a.top + k, a.depth - k, a.coeffs, min(a.valid_to - k, a.depth - k), a.domain)


def reciprocal(a: LaurentSeries) -> LaurentSeries:
    if a.is_zero or a.leading == 0:
        raise NotInvertible("leading coefficient is zero")
    t = a.top
    depth = a.depth + 2 * t
    if depth < 0:
        raise DepthExhausted("reciprocal has no coefficient window left")
    lead = a.leading
    n = len(a.coeffs)
    if a.domain is Domain.FLOAT:
        inv_lead = 1 / lead
        r = [c * inv_lead for c in a.coeffs]
        s = [1 + 0j]
        for k in range(1, n):
            # the new entry depends on r[1..k] and s[0..k-1]
            s.append(-sum(r[i] * s[k - i] for i in range(1, k + 1)))
        out = [x * inv_lead for x in s]
    else:
        inv_lead = QQi(1) / lead
        r = [c * inv_lead for c in a.coeffs]
        s = [QQi(1)]
        for k in range(1, n):
            acc = QQi(0)
            for i in range(1, k + 1):
                if r[i]:
                    acc = acc + r[i] * s[k - i]
            s.append(-acc)
        out = [x * inv_lead for x in s]
    return _make(-t, depth, out, a.valid_to + 2 * t, a.domain)


def derivative(a: LaurentSeries) -> LaurentSeries:
    # the z^(-depth) term lands at -depth-1 and is dropped
    coeffs = [k * c for k, c in a.items() if k > -a.depth]
    if not coeffs:
        return LaurentSeries.zero_series(a.depth, a.domain)
    return _make(a.top - 1, a.depth, coeffs, min(a.valid_to + 1, a.depth), a.domain)


def z_derivative(a: LaurentSeries) -> LaurentSeries:
    """Euler operator ``z d/dz``; degree-preserving, so no validity is lost."""
    return _make(a.top, a.depth, [k * c for k, c in a.items()], a.valid_to, a.domain)


def _normalized_tail(a: LaurentSeries, what: str) -> list:
    """Return [1, a_1, ..., a_d] for a series with constant term 1."""
    if a.top != 0:
        raise BadNormalization(f"{what} needs top degree 0, got {a.top}")
    c0 = a.coeffs[0]
    if a.domain is Domain.EXACT:
        if c0 != 1:
            raise BadNormalization(f"{what} needs constant term 1, got {c0}")
        return list(a.coeffs)
    if abs(c0 - 1) > FLOAT_NORMALIZATION_TOL:
        raise BadNormalization(f"{what} needs constant term 1, got {c0}")
    return [1 + 0j] + list(a.coeffs[1:])


def log_series(a: LaurentSeries) -> LaurentSeries:
    """Principal formal logarithm of a series ``1 + a_1/z + ...``."""
    x = _normalized_tail(a, "log")
    d = a.depth
    L = [zero(a.domain)] * (d + 1)
    for n in range(1, d + 1):
        acc = n * x[n]
        for k in range(1, n):
            if L[k]:
                acc = acc - k * L[k] * x[n - k]
        L[n] = acc / n
    return _make(0, d, L, a.valid_to, a.domain)


def exp_series(a: LaurentSeries) -> LaurentSeries:
    """Formal exponential of a series with no constant or positive terms."""
    if a.top > 0 or (a.top == 0 and not a.is_zero):
        if not (a.domain is Domain.FLOAT and a.top == 0 and abs(a.coeffs[0]) <= FLOAT_NORMALIZATION_TOL):
            raise BadNormalization("exp needs a series with zero constant term and no positive powers")
    d = a.depth
    f = [a[-n] for n in range(d + 1)]
    f[0] = zero(a.domain)
    E = [one(a.domain)] + [zero(a.domain)] * d
    for n in range(1, d + 1):
        acc = zero(a.domain)
        for k in range(1, n + 1):
            if f[k]:
                acc = acc + k * f[k] * E[n - k]
        E[n] = acc / n
    return _make(0, d, E, a.valid_to, a.domain)


def _exponent(t, domain: Domain):
    if domain is Domain.EXACT:
        if isinstance(t, float):
            if not t.is_integer():
                raise DomainMismatch("irrational-looking float exponent on an EXACT series; use Fraction or FLOAT")
            t = int(t)
        if not is_exact_scalar(t) or isinstance(t, QQi):
            raise DomainMismatch(f"exponent {t!r} is not an exact rational")
        return Fraction(t)
    return float(t)


def pow_real(a: LaurentSeries, t) -> LaurentSeries:
    """``a**t`` on the principal branch, for ``a = 1 + a_1/z + ...``.

    Uses the power recurrence ``n b_n = sum_k (k(t+1) - n) a_k b_{n-k}``,
    which equals ``exp(t log a)`` coefficientwise.  EXACT series accept
    integer or Fraction exponents (the coefficients stay rational).
    """
    t = _exponent(t, a.domain)
    x = _normalized_tail(a, "pow_real")
    d = a.depth
    if a.domain is Domain.EXACT:
        tq = QQi(t)
        b = [QQi(1)] + [QQi(0)] * d
        tp1 = tq + 1
        for n in range(1, d + 1):
            acc = QQi(0)
            for k in range(1, n + 1):
                if x[k]:
                    acc = acc + (tp1 * k - n) * x[k] * b[n - k]
            b[n] = acc / n
    else:
        b = [1 + 0j] + [0j] * d
        for n in range(1, d + 1):
            acc = 0j
            for k in range(1, n + 1):
                acc += (k * (t + 1) - n) * x[k] * b[n - k]
            b[n] = acc / n
    return _make(0, d, b, a.valid_to, a.domain)


def eval_at(a: LaurentSeries, z):
    """Evaluate the stored truncation at ``z`` (scalar or numpy array).

    EXACT series evaluated at an exact rational point give an exact QQi.
    """
    exact = a.domain is Domain.EXACT and is_exact_scalar(z)
    if exact:
        z = coerce(z, Domain.EXACT)
        conv = lambda c: c  # noqa: E731
        acc = QQi(0)
    else:
        if not isinstance(z, numbers.Number):
            z = np.asarray(z, dtype=complex)
        conv = complex
        acc = 0j
    for k in range(a.top, -1, -1):
        acc = acc * z + conv(a[k])
    x = 1 / z
    tail = QQi(0) if exact else 0j
    for j in range(a.depth, 0, -1):
        tail = (tail + conv(a[-j])) * x
    return acc + tail


def z_log_derivative(g) -> LaurentSeries:
    """``z g'(z) / g(z)`` as a series with constant term 1."""
    s = g.series if isinstance(g, MeromorphicMap) else g
    return multiply(z_derivative(s), reciprocal(s))


# ---------------------------------------------------------------------------
# normalized maps


class MeromorphicMap:
    """``z + b_0 + b_1/z + b_2/z^2 + ...`` stored as a LaurentSeries."""

    __slots__ = ("series",)

    def __init__(self, series: LaurentSeries):
        if series.top != 1 or series.leading != 1:
            raise BadNormalization("a meromorphic map must be z + b_0 + b_1/z + ...")
        object.__setattr__(self, "series", series)

    def __setattr__(self, key, value):
        raise AttributeError("MeromorphicMap is immutable")

    @classmethod
    def from_coefficients(cls, b: Iterable, depth: int | None = None, domain: Domain | None = None,
                          valid_to: int | None = None):
        """``b[n]`` is the coefficient of ``z^(-n)``; ``b[0]`` the constant term."""
        b = list(b)
        if depth is None:
            depth = max(len(b) - 1, 0)
        terms = {1: 1}
        terms.update({-n: c for n, c in enumerate(b)})
        if domain is None:
            domain = domain_of_scalars(b)
        return cls(LaurentSeries.from_terms(terms, depth=depth, domain=domain, valid_to=valid_to))

    @classmethod
    def identity(cls, depth: int = DEFAULT_DEPTH, domain: Domain = Domain.EXACT):
        return cls(LaurentSeries.from_terms({1: 1}, depth=depth, domain=domain))

    def b(self, n: int):
        return self.series[-n]

    def coefficients(self) -> list:
        return [self.b(n) for n in range(self.depth + 1)]

    @property
    def depth(self) -> int:
        return self.series.depth

    @property
    def valid_to(self) -> int:
        return self.series.valid_to

    @property
    def domain(self) -> Domain:
        return self.series.domain

    def to_float(self):
        return type(self)(self.series.to_float())

    def truncate(self, depth: int):
        return type(self)(self.series.truncate(depth))

    def __call__(self, z):
        return eval_at(self.series, z)

    def derivative_at(self, z):
        return eval_at(derivative(self.series), z)

    def __eq__(self, other):
        return type(other) is type(self) and self.series == other.series

    def __hash__(self):
        return hash(self.series)

    def __repr__(self):
        return f"{type(self).__name__}({self.series!r})"


def max_abs_coefficient(s: LaurentSeries) -> float:
    return max(abs(complex(c)) for c in s.coeffs)
