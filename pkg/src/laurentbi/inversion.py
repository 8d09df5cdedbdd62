"""Compositional inverse of ``g(z) = z + b_0 + b_1/z + ...`` near infinity.

The inverse ``h(w) = w + B_0 + B_1/w + ...`` is found order by order from
``[w^-n] g(h(w)) = 0`` (n = 0, 1, ..., depth).  ``B_n`` enters that
coefficient with unit pivot, so each order is a direct solve.
"""

from __future__ import annotations

import cmath
import math

from .errors import DepthExhausted, OracleDiverged
from .series import (
    LaurentSeries,
    MeromorphicMap,
    eval_at,
    derivative,
    multiply,
    reciprocal,
)
from .scalars import Domain, zero


class InverseMap(MeromorphicMap):
    """``h(w) = w + B_0 + B_1/w + ...``; identical normal form to the forward map."""

    __slots__ = ()

    def B(self, n: int):
        return self.b(n)


def compose(g: MeromorphicMap, h: LaurentSeries) -> LaurentSeries:
    """``g(h(w))`` for ``h`` with top degree 1, truncated to ``min(depths)``.

    Horner in ``u = 1/h``:  g(h) = h + b_0 + u (b_1 + u (b_2 + ...)).
    """
    if h.top != 1:
        raise ValueError("compose expects an inner series with top degree 1")
    depth = min(g.depth, h.depth)
    u = reciprocal(h).truncate(depth)
    b = g.coefficients()
    out = h.truncate(depth) + b[0]
    if depth >= 1:
        acc = LaurentSeries.constant(b[depth], depth=depth, domain=g.domain)
        for k in range(depth - 1, 0, -1):
            acc = multiply(acc, u).truncate(depth) + b[k]
        out = out + multiply(acc, u).truncate(depth)
    return out.with_valid_to(min(g.valid_to, h.valid_to, depth))


def invert(g: MeromorphicMap, depth: int | None = None) -> InverseMap:
    """Series of ``g^{-1}`` with ``B_0 .. B_depth``.

    ``B_n`` depends only on ``b_0 .. b_n``, so the result is exact to
    ``depth`` whenever ``depth <= g.valid_to``.
    """
    if depth is None:
        depth = g.valid_to
    if depth > g.valid_to:
        raise DepthExhausted(f"requested depth {depth} but g is only valid to {g.valid_to}")
    if depth < 0:
        raise DepthExhausted("depth must be non-negative")
    g = g.truncate(depth) if g.depth > depth else g
    dom = g.domain
    B = [zero(dom)] * (depth + 1)
    for n in range(depth + 1):
        h = _from_B(B, depth, dom)
        # residual coefficient at w^-n; B_n is currently 0 and has unit pivot
        residual = compose(g, h)[-n]
        B[n] = -residual
    return InverseMap(_from_B(B, depth, dom))


def _from_B(B, depth, dom) -> LaurentSeries:
    terms = {1: 1}
    terms.update({-n: c for n, c in enumerate(B)})
    return LaurentSeries.from_terms(terms, depth=depth, domain=dom)


def inverse_closed_form(b0, b1, b2, b3):
    """Explicit ``(B_0, B_1, B_2, B_3)`` in terms of ``b_0 .. b_3``."""
    return (
        -b0,
        -b1,
        -b2 - b0 * b1,
        -(b3 + 2 * b0 * b2 + b0 * b0 * b1 + b1 * b1),
    )


def newton_inverse_oracle(g: MeromorphicMap, w: complex, *, max_iter: int = 64,
                          rtol: float = 1e-12, enforce_floor: bool = True) -> complex:
    """Solve ``g(z) = w`` by Newton's method started at ``z = w``.

    Independent of :func:`invert`: only evaluates ``g`` and ``g'`` pointwise.
    """
    gs = g.series.to_float()
    w = complex(w)
    if enforce_floor:
        floor = 4 * (1 + max(abs(complex(c)) for c in gs.coeffs))
        if abs(w) < floor:
            raise ValueError(f"|w| = {abs(w):.6g} is below the dominant-root floor {floor:.6g}")
    dgs = derivative(gs)
    z = w
    for _ in range(max_iter):
        f = complex(eval_at(gs, z)) - w
        if abs(f) <= rtol * abs(w):
            return z
        fp = complex(eval_at(dgs, z))
        if fp == 0 or not cmath.isfinite(fp):
            break
        z = z - f / fp
        if not cmath.isfinite(z):
            break
    f = complex(eval_at(gs, z)) - w
    if abs(f) <= rtol * abs(w):
        return z
    raise OracleDiverged(f"Newton did not converge for w = {w}")


def empirical_inverse_radius(g: MeromorphicMap, h: InverseMap | None = None, *, angles: int = 32,
                             r_max: float = 64.0, steps: int = 48, tol: float = 1e-6) -> float:
    """Smallest tested ``R`` such that Newton converges on ``|w| = R`` and agrees with the series.

    Radii are scanned geometrically downwards from ``r_max``; the last radius
    at which every angle passed is returned (``inf`` if even ``r_max`` fails).
    """
    if h is None:
        h = invert(g, g.valid_to)
    hs = h.series.to_float()
    best = math.inf
    ratio = (1.0 / r_max) ** (1.0 / steps)  # down to radius 1
    r = r_max
    for _ in range(steps + 1):
        ok = True
        for j in range(angles):
            w = r * cmath.exp(2j * math.pi * (j + 0.5) / angles)
            try:
                z = newton_inverse_oracle(g, w, enforce_floor=False)
            except OracleDiverged:
                ok = False
                break
            if abs(z - complex(eval_at(hs, w))) > tol * abs(w):
                ok = False
                break
        if not ok:
            break
        best = r
        r *= ratio
    return best


def catalan_map(depth: int = 16) -> MeromorphicMap:
    """``z + 1/z``: its inverse has Catalan-number coefficients."""
    return MeromorphicMap(LaurentSeries.from_terms({1: 1, -1: 1}, depth=depth, domain=Domain.EXACT))


__all__ = [
    "InverseMap",
    "compose",
    "invert",
    "inverse_closed_form",
    "newton_inverse_oracle",
    "empirical_inverse_radius",
    "catalan_map",
]
