"""Positive-real-part functions on 1 < |z| < oo from finite Herglotz atoms.

    p(z) = sum_k w_k (z + u_k) / (z - u_k),   w_k > 0,  sum w_k = 1,  |u_k| <= 1

has ``Re p > 0`` on ``|z| > 1`` and expands as ``1 + sum_n c_n z^-n`` with
``c_n = 2 sum_k w_k u_k^n``; hence ``|c_n| <= 2``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import OutsideDomain
from .scalars import (
    Domain,
    QQi,
    coerce,
    domain_of_scalars,
    parse_exact_complex,
    parse_float_complex,
    parse_rational,
    rational_str,
)
from .series import LaurentSeries

WEIGHT_SUM_TOL = 1e-12


@dataclass(frozen=True)
class Atom:
    weight: object
    u: object


@dataclass(frozen=True)
class CaratheodoryAtoms:
    atoms: tuple

    def __post_init__(self):
        atoms = tuple(a if isinstance(a, Atom) else Atom(*a) for a in self.atoms)
        if not atoms:
            raise ValueError("at least one atom is required")
        object.__setattr__(self, "atoms", atoms)
        dom = self.domain
        total = sum((a.weight for a in atoms), Fraction(0) if dom is Domain.EXACT else 0.0)
        for a in atoms:
            if a.weight <= 0:
                raise ValueError(f"atom weight must be positive, got {a.weight}")
            if dom is Domain.EXACT:
                if coerce(a.u, dom).abs2() > 1:
                    raise ValueError(f"atom point {a.u} lies outside the closed unit disk")
            elif abs(complex(a.u)) > 1 + 1e-12:
                raise ValueError(f"atom point {a.u} lies outside the closed unit disk")
        if dom is Domain.EXACT:
            if total != 1:
                raise ValueError(f"weights sum to {total}, not 1")
        elif abs(total - 1) > WEIGHT_SUM_TOL:
            raise ValueError(f"weights sum to {total!r}, not 1")

    @property
    def domain(self) -> Domain:
        return domain_of_scalars([x for a in self.atoms for x in (a.weight, a.u)])

    # -- coefficients ---------------------------------------------------------
    def coefficient(self, n: int):
        """``c_n``; ``c_0`` is taken to be 1 (the constant term of p)."""
        dom = self.domain
        if n == 0:
            return coerce(1, dom)
        return coerce(2, dom) * sum(
            (coerce(a.weight, dom) * coerce(a.u, dom) ** n for a in self.atoms),
            coerce(0, dom),
        )

    def coefficients(self, depth: int) -> list:
        dom = self.domain
        ws = [coerce(a.weight, dom) for a in self.atoms]
        us = [coerce(a.u, dom) for a in self.atoms]
        out = [coerce(1, dom)]
        powers = list(ws)
        for _ in range(depth):
            powers = [pw * u for pw, u in zip(powers, us)]
            out.append(2 * sum(powers, coerce(0, dom)))
        return out

    def series(self, depth: int, domain: Domain | None = None) -> LaurentSeries:
        c = self.coefficients(depth)
        s = LaurentSeries.from_inverse_powers(c, depth=depth, domain=self.domain)
        if domain is Domain.FLOAT:
            s = s.to_float()
        return s

    def negated(self) -> "CaratheodoryAtoms":
        """``u_k -> -u_k``: flips the sign of every odd-index coefficient."""
        return CaratheodoryAtoms(tuple(Atom(a.weight, -a.u) for a in self.atoms))

    def first_moment(self):
        """``sum w_k u_k = c_1 / 2``."""
        return self.coefficient(1) / 2

    # -- evaluation -----------------------------------------------------------
    def __call__(self, z):
        """Closed-form ``p(z)``; vectorized over numpy arrays."""
        z = np.asarray(z, dtype=complex)
        out = np.zeros_like(z)
        for a in self.atoms:
            u = complex(a.u)
            out = out + float(a.weight) * (z + u) / (z - u)
        return out

    # -- I/O ----------------------------------------------------------------------
    def to_json_obj(self) -> dict:
        if self.domain is Domain.EXACT:
            rows = []
            for a in self.atoms:
                u = coerce(a.u, Domain.EXACT)
                rows.append({"u": [rational_str(u.re), rational_str(u.im)], "weight": rational_str(a.weight)})
        else:
            rows = [
                {"u": [complex(a.u).real, complex(a.u).imag], "weight": float(a.weight)}
                for a in self.atoms
            ]
        return {"atoms": rows}

    @classmethod
    def from_json_obj(cls, obj) -> "CaratheodoryAtoms":
        atoms = []
        for row in obj["atoms"]:
            w, (re_, im_) = row["weight"], row["u"]
            if all(isinstance(v, str) for v in (w, re_, im_)):
                atoms.append(Atom(parse_rational(w), QQi(parse_rational(re_), parse_rational(im_))))
            else:
                atoms.append(Atom(float(w), complex(float(re_), float(im_))))
        return cls(tuple(atoms))


def single_atom(u, weight=1) -> CaratheodoryAtoms:
    return CaratheodoryAtoms((Atom(weight, u),))


_FRACTION_ONLY = re.compile(r"^[0-9+\-/ij ]*$")


def parse_atoms(text: str, exact: bool | None = None) -> CaratheodoryAtoms:
    """Parse the inline shorthand ``"0.5@1,0.5@-1"`` (``weight@point``).

    Points may be complex (``0.3+0.4j``).  With ``exact=None`` the exact
    domain is chosen when no token contains a decimal point or exponent.
    """
    tokens = [t for t in text.replace(" ", "").split(",") if t]
    if exact is None:
        exact = all(_FRACTION_ONLY.match(t.replace("@", "")) for t in tokens)
    atoms = []
    for t in tokens:
        if "@" not in t:
            raise ValueError(f"atom {t!r} is not of the form weight@point")
        w, u = t.split("@", 1)
        if exact:
            atoms.append(Atom(Fraction(w), parse_exact_complex(u)))
        else:
            atoms.append(Atom(float(Fraction(w)) if "/" in w else float(w), parse_float_complex(u)))
    return CaratheodoryAtoms(tuple(atoms))


def min_real_on_circles(p: CaratheodoryAtoms, radii: Sequence[float], samples: int) -> float:
    """Minimum of ``Re p`` sampled on ``|z| = r`` for each radius."""
    if any(r <= 1 for r in radii):
        raise OutsideDomain("all radii must exceed 1")
    theta = 2 * math.pi * np.arange(samples) / samples
    best = math.inf
    for r in radii:
        best = min(best, float(np.min(p(r * np.exp(1j * theta)).real)))
    return best


def sample_random(seed, max_atoms: int = 4) -> CaratheodoryAtoms:
    """Deterministic random datum.

    ``seed`` may be an int or a sequence of ints (numpy ``SeedSequence``
    entropy), so sweeps can use ``(seed, trial_index)``.
    """
    if max_atoms not in (1, 2, 3, 4):
        raise ValueError("max_atoms must be 1, 2, 3 or 4")
    rng = np.random.default_rng(seed)
    k = int(rng.integers(1, max_atoms + 1))
    weights = rng.dirichlet(np.ones(k))
    atoms = []
    for i in range(k):
        phase = rng.uniform(0.0, 2 * math.pi)
        if rng.random() < 0.5:
            radius = 1.0
        else:
            radius = math.sqrt(rng.random())
        atoms.append(Atom(float(weights[i]), complex(radius * math.cos(phase), radius * math.sin(phase))))
    # renormalize so the float sum is 1 to rounding
    total = sum(a.weight for a in atoms)
    atoms = [Atom(a.weight / total, a.u) for a in atoms]
    return CaratheodoryAtoms(tuple(atoms))


def sample_centered(seed, max_atoms: int = 3) -> CaratheodoryAtoms:
    """Random datum with ``sum w_k u_k = 0`` (so ``c_1 = 0``).

    Even draws use antipodal pairs; odd draws append a balancing unimodular
    atom of weight ``m / (1 + m)`` opposite the first moment ``m``.
    """
    rng = np.random.default_rng(seed)
    if rng.random() < 0.5:
        base = sample_random(rng.integers(0, 2**63), max_atoms)
        atoms = []
        for a in base.atoms:
            atoms += [Atom(a.weight / 2, a.u), Atom(a.weight / 2, -a.u)]
        return CaratheodoryAtoms(tuple(atoms))
    base = sample_random(rng.integers(0, 2**63), max_atoms)
    m = complex(base.first_moment())
    mag = abs(m)
    if mag < 1e-15:
        return base
    mu = mag / (1 + mag)
    atoms = [Atom(a.weight * (1 - mu), a.u) for a in base.atoms]
    atoms.append(Atom(mu, -m / mag))
    return CaratheodoryAtoms(tuple(atoms))
