"""Meromorphic maps built from a Caratheodory datum for each subclass.

STARLIKE(alpha)             z g'/g          = alpha + (1 - alpha) p
STRONGLY_STARLIKE(alpha)    z g'/g          = p ** alpha
BAZILEVIC(beta, alpha)      (z/g)^(1-beta) g' = p ** alpha

Construction parametrizes the ``p`` side only.  The inverse-side function
``q`` is computed afterwards (:func:`induced_q`) and checked, not imposed.
"""

from __future__ import annotations

import enum
import numbers
from dataclasses import dataclass
from fractions import Fraction

from .caratheodory import CaratheodoryAtoms
from .errors import DegeneratePivot, DepthExhausted, MalformedTarget, UnsupportedParameters
from .inversion import invert
from .scalars import Domain, coerce, is_exact_scalar, rational_str
from .series import (
    LaurentSeries,
    MeromorphicMap,
    derivative,
    multiply,
    pow_real,
    shift,
    z_log_derivative,
)

PIVOT_TOL = 1e-8
# |S_0 - 1| tolerated on the inverse side before declaring the target malformed
CONSTANT_TERM_TOL = 1e-9


class ClassKind(str, enum.Enum):
    STARLIKE = "starlike"
    STRONGLY_STARLIKE = "strongly-starlike"
    BAZILEVIC = "bazilevic"


@dataclass(frozen=True)
class ClassSpec:
    kind: ClassKind
    alpha: object
    beta: object = None

    def __post_init__(self):
        kind = ClassKind(self.kind)
        object.__setattr__(self, "kind", kind)
        a = self.alpha
        if kind is ClassKind.STARLIKE:
            if not (0 <= a < 1):
                raise UnsupportedParameters(f"starlike order must satisfy 0 <= alpha < 1, got {a}")
        elif not (0 < a <= 1):
            raise UnsupportedParameters(f"alpha must satisfy 0 < alpha <= 1, got {a}")
        if kind is ClassKind.BAZILEVIC:
            if self.beta is None or not self.beta > 0:
                raise UnsupportedParameters(f"Bazilevic type must satisfy beta > 0, got {self.beta}")
        elif self.beta is not None:
            raise UnsupportedParameters("beta only applies to the Bazilevic class")

    @classmethod
    def starlike(cls, alpha):
        return cls(ClassKind.STARLIKE, alpha)

    @classmethod
    def strongly_starlike(cls, alpha):
        return cls(ClassKind.STRONGLY_STARLIKE, alpha)

    @classmethod
    def bazilevic(cls, beta, alpha):
        return cls(ClassKind.BAZILEVIC, alpha, beta)

    @property
    def exact(self) -> bool:
        return is_exact_scalar(self.alpha) and (self.beta is None or is_exact_scalar(self.beta))

    def check_pivots(self, depth: int):
        if self.kind is not ClassKind.BAZILEVIC:
            return
        worst = min(abs(n + 1 - self.beta) for n in range(depth + 1))
        if worst < PIVOT_TOL:
            raise DegeneratePivot(
                f"beta = {self.beta} makes the pivot n + 1 - beta vanish; b_n is undetermined"
            )

    def to_json_obj(self) -> dict:
        def num(x):
            if x is None:
                return None
            if isinstance(x, numbers.Rational) and not isinstance(x, numbers.Integral):
                return rational_str(x)
            return float(x) if isinstance(x, float) else x

        out = {"class": self.kind.value, "alpha": num(self.alpha)}
        if self.beta is not None:
            out["beta"] = num(self.beta)
        return out

    def __str__(self):
        if self.kind is ClassKind.BAZILEVIC:
            return f"{self.kind.value}(beta={self.beta}, alpha={self.alpha})"
        return f"{self.kind.value}(alpha={self.alpha})"


@dataclass(frozen=True)
class ConstructedMap:
    g: MeromorphicMap
    spec: ClassSpec
    source: CaratheodoryAtoms
    target_series: LaurentSeries

    def lhs(self) -> LaurentSeries:
        return defining_expression(self.g.series, self.spec)

    def residual(self, relative: bool = False) -> float:
        """Largest |LHS(g) - target| over degrees both sides know exactly.

        With ``relative`` the result is divided by ``max(1, max |b_n|)``; for
        beta near 1 the coefficients grow geometrically and float rounding
        scales with them.
        """
        lhs = self.lhs()
        target = self.target_series
        lo = -min(lhs.valid_to, target.valid_to, self.g.valid_to)
        r = lhs.max_abs_diff(target, lo)
        if relative:
            r /= max(1.0, max(abs(complex(b)) for b in self.g.coefficients()))
        return r

    def b(self, n: int):
        return self.g.b(n)


# ---------------------------------------------------------------------------


def defining_expression(s: LaurentSeries, spec: ClassSpec) -> LaurentSeries:
    """The left-hand side of the class condition, applied to ``s``.

    Works equally for ``g`` (variable z) and ``h`` (variable w).
    """
    if spec.kind is ClassKind.BAZILEVIC:
        return bazilevic_expression(s, spec.beta)
    return z_log_derivative(s)


def bazilevic_expression(s: LaurentSeries, beta) -> LaurentSeries:
    """``(z/g)^(1-beta) g'`` = ``(g/z)^(beta-1) g'``."""
    G = shift(s, -1)  # g/z = 1 + b_0/z + ...; exact monomial shift
    e = _param(beta, s.domain) - 1
    return multiply(pow_real(G, e), derivative(s))


def _param(x, domain: Domain):
    if domain is Domain.EXACT:
        return Fraction(x)
    return float(x)


def _working_domain(p: CaratheodoryAtoms, spec: ClassSpec) -> Domain:
    return Domain.EXACT if p.domain is Domain.EXACT and spec.exact else Domain.FLOAT


def target_series(p: CaratheodoryAtoms, spec: ClassSpec, depth: int) -> LaurentSeries:
    dom = _working_domain(p, spec)
    ps = p.series(depth, Domain.FLOAT if dom is Domain.FLOAT else None)
    a = _param(spec.alpha, dom)
    if spec.kind is ClassKind.STARLIKE:
        return ps * (1 - a) + coerce(a, dom)
    return pow_real(ps, a)


def _solve_starlike_family(T: LaurentSeries, depth: int) -> list:
    """Solve ``z g' = T g`` for g = z + sum b_m z^-m.

    Matching z^-m gives  -(m+1) b_m = t_{m+1} + sum_{n=1}^{m} t_n b_{m-n}.
    """
    t = T.inverse_power_coeffs(depth + 1)
    b = []
    for m in range(depth + 1):
        acc = t[m + 1]
        for n in range(1, m + 1):
            acc = acc + t[n] * b[m - n]
        b.append(-acc / (m + 1))
    return b


def _map(b, depth, dom) -> MeromorphicMap:
    return MeromorphicMap.from_coefficients(b, depth=depth, domain=dom)


def build_starlike(p: CaratheodoryAtoms, alpha, depth: int = 16) -> ConstructedMap:
    spec = ClassSpec.starlike(alpha)
    T = target_series(p, spec, depth + 1)
    b = _solve_starlike_family(T, depth)
    return ConstructedMap(_map(b, depth, T.domain), spec, p, T)


def build_strongly_starlike(p: CaratheodoryAtoms, alpha, depth: int = 16) -> ConstructedMap:
    spec = ClassSpec.strongly_starlike(alpha)
    T = target_series(p, spec, depth + 1)
    b = _solve_starlike_family(T, depth)
    return ConstructedMap(_map(b, depth, T.domain), spec, p, T)


def build_bazilevic(p: CaratheodoryAtoms, beta, alpha, depth: int = 16) -> ConstructedMap:
    """Order-by-order solve of ``(z/g)^(1-beta) g' = p^alpha``.

    At ``z^-(n+1)`` the unknown ``b_n`` enters with pivot ``-(n + 1 - beta)``.
    """
    spec = ClassSpec.bazilevic(beta, alpha)
    spec.check_pivots(depth)
    P = target_series(p, spec, depth + 1)
    dom = P.domain
    be = _param(beta, dom)
    work = depth + 1
    b = [coerce(0, dom)] * (work + 1)
    for n in range(depth + 1):
        lhs = bazilevic_expression(_map(b, work, dom).series, be)
        k = -(n + 1)
        b[n] = (lhs[k] - P[k]) / (n + 1 - be)
    g = _map(b[: depth + 1], depth, dom)
    return ConstructedMap(g, spec, p, P)


def build(p: CaratheodoryAtoms, spec: ClassSpec, depth: int = 16) -> ConstructedMap:
    if spec.kind is ClassKind.STARLIKE:
        return build_starlike(p, spec.alpha, depth)
    if spec.kind is ClassKind.STRONGLY_STARLIKE:
        return build_strongly_starlike(p, spec.alpha, depth)
    return build_bazilevic(p, spec.beta, spec.alpha, depth)


# ---------------------------------------------------------------------------


def inverse_side_series(g: MeromorphicMap, spec: ClassSpec, depth: int | None = None) -> LaurentSeries:
    """``q`` such that the inverse-side condition reads ``q in P``.

    STARLIKE:            q = (w h'/h - alpha) / (1 - alpha)
    STRONGLY_STARLIKE:   q = (w h'/h) ** (1/alpha)
    BAZILEVIC:           q = ((w/h)^(1-beta) h') ** (1/alpha)
    """
    if depth is None:
        depth = g.valid_to
    if depth > g.valid_to:
        raise DepthExhausted(f"q to depth {depth} needs g valid to {depth}, have {g.valid_to}")
    h = invert(g, depth)
    dom = g.domain
    if dom is Domain.EXACT and not spec.exact:
        h = h.to_float()
        dom = Domain.FLOAT
    S = defining_expression(h.series, spec)
    if S.top != 0 or abs(complex(S[0]) - 1) > CONSTANT_TERM_TOL:
        raise MalformedTarget(f"inverse-side expression has constant term {S[0]}, expected 1")
    a = _param(spec.alpha, dom)
    if spec.kind is ClassKind.STARLIKE:
        q = (S - coerce(a, dom)) * (coerce(1, dom) / coerce(1 - a, dom))
    else:
        q = pow_real(S, 1 / a)
    return q.truncate(min(depth, q.depth))


def induced_q(c: ConstructedMap, depth: int | None = None) -> LaurentSeries:
    return inverse_side_series(c.g, c.spec, depth)
