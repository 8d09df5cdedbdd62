"""Membership checks, bound formulas and extremal sweeps.

Inverse-side membership is sampled on the part of the inverse's domain that
is the image of the circles ``|z| = r``: at ``w = g(z)`` we have ``h(w) = z``
and ``h'(w) = 1 / g'(z)``, so the inverse-side expression is the reciprocal
of the forward one, evaluated from the truncated series of ``g``.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .caratheodory import Atom, CaratheodoryAtoms, sample_centered, sample_random
from .errors import OutsideDomain, UnsupportedParameters
from .inversion import invert
from .series import MeromorphicMap, derivative, eval_at
from .subclass import ClassKind, ClassSpec, ConstructedMap, build, induced_q

DEFAULT_RADII = (1.25, 1.5, 2.0, 4.0, 8.0)
DEFAULT_SAMPLES = 256
RADIUS_FLOOR = 1.25
Q_TOL = 1e-6
TAIL_TOL = 1e-6
RATIO_TOL = 1e-6
BOUNDARY_POINTS = 64

CAVEAT = "membership is not certified on 1 < |z| < 1.25; truncated tails dominate near |z| = 1"


@dataclass(frozen=True)
class MembershipReport:
    q_min_real: float
    tail_estimate: float
    admitted: bool
    radii: tuple
    samples: int
    arg_margin: float | None = None
    series_agreement: float | None = None

    def to_json_obj(self) -> dict:
        return {
            "admitted": self.admitted,
            "arg_margin": self.arg_margin,
            "q_min_real": self.q_min_real,
            "radii": list(self.radii),
            "samples": self.samples,
            "series_agreement": self.series_agreement,
            "tail_estimate": self.tail_estimate,
        }


def theorem_bounds(spec: ClassSpec) -> tuple[float, float]:
    """Upper bounds for ``(|b_0|, |b_1|)`` stated for each class."""
    a = float(spec.alpha)
    if spec.kind is ClassKind.STARLIKE:
        return 2 * (1 - a), (1 - a) * math.sqrt(4 * a * a - 8 * a + 5)
    if spec.kind is ClassKind.STRONGLY_STARLIKE:
        return 2 * a, math.sqrt(5) * a * a
    b = float(spec.beta)
    if b >= 1:
        raise UnsupportedParameters(f"the Bazilevic bounds are only meaningful for beta < 1 (got {b})")
    k = (1 - b) * (2 - b)
    return 2 * a / (1 - b), 2 * a * a / k * math.sqrt(2 * k + 1)


def b0_zero_bounds(spec: ClassSpec) -> dict:
    """Bounds on ``|b_1|`` when ``b_0 = 0``: as printed, and re-derived.

    Re-derivation sets ``c_1 = 0`` in the second coefficient relation:
    STARLIKE ``-2 b_1 = (1-alpha) c_2``, STRONGLY_STARLIKE ``-2 b_1 = alpha c_2``,
    BAZILEVIC ``-(2-beta) b_1 = alpha c_2``; then ``|c_2| <= 2``.
    """
    a = float(spec.alpha)
    if spec.kind is ClassKind.STARLIKE:
        return {"printed": a, "derived": 1 - a}
    if spec.kind is ClassKind.STRONGLY_STARLIKE:
        return {"printed": a, "derived": a}
    b = float(spec.beta)
    # printed with the symbol roles as 2 beta^2 / (2 - alpha)
    return {"printed": 2 * b * b / (2 - a), "derived": 2 * a / (2 - b)}


def _forward_expression(gs, dgs, z: np.ndarray, spec: ClassSpec) -> tuple[np.ndarray, np.ndarray]:
    gz = eval_at(gs, z)
    dg = eval_at(dgs, z)
    if spec.kind is ClassKind.BAZILEVIC:
        e = 1 - float(spec.beta)
        return gz, np.exp(e * np.log(z / gz)) * dg
    return gz, z * dg / gz


def _q_from_inverse_expression(S: np.ndarray, spec: ClassSpec) -> np.ndarray:
    a = float(spec.alpha)
    if spec.kind is ClassKind.STARLIKE:
        return (S - a) / (1 - a)
    return np.exp(np.log(S) / a)


def check_membership(
    c: ConstructedMap,
    radii=DEFAULT_RADII,
    samples: int = DEFAULT_SAMPLES,
    *,
    q_tol: float = Q_TOL,
    tail_tol: float = TAIL_TOL,
    series_check: bool = True,
) -> MembershipReport:
    radii = tuple(float(r) for r in radii)
    if not radii or min(radii) < RADIUS_FLOOR:
        raise OutsideDomain(f"radii must be >= {RADIUS_FLOOR}")
    gs = c.g.series.to_float()
    dgs = derivative(gs)
    theta = 2 * math.pi * np.arange(samples) / samples
    spec = c.spec
    q_min = math.inf
    max_arg = 0.0
    w_outer = q_outer = None
    for r in radii:
        z = r * np.exp(1j * theta)
        gz, L = _forward_expression(gs, dgs, z, spec)
        S = 1 / L
        q = _q_from_inverse_expression(S, spec)
        q_min = min(q_min, float(np.min(q.real)))
        max_arg = max(max_arg, float(np.max(np.abs(np.angle(S)))))
        if r == max(radii):
            w_outer, q_outer = gz, q
    if not math.isfinite(q_min):
        q_min = -math.inf

    d = gs.depth
    r0 = min(radii)
    tail = sum((n + 1) * abs(complex(gs[-n])) * r0 ** (-n) for n in (d - 1, d) if n >= 0)

    arg_margin = None
    if spec.kind is not ClassKind.STARLIKE:
        arg_margin = float(spec.alpha) * math.pi / 2 - max_arg

    agreement = None
    if series_check:
        qs = induced_q(c).to_float()
        agreement = float(np.max(np.abs(eval_at(qs, w_outer) - q_outer)))

    admitted = q_min >= -q_tol and tail <= tail_tol
    return MembershipReport(q_min, float(tail), bool(admitted), radii, samples, arg_margin, agreement)


# ---------------------------------------------------------------------------
# sweeps


def boundary_family(points: int = BOUNDARY_POINTS) -> list[CaratheodoryAtoms]:
    """Single unimodular atoms ``u = exp(i theta)`` on a uniform grid."""
    out = []
    for k in range(points):
        th = 2 * math.pi * k / points
        u = complex(1.0, 0.0) if k == 0 else complex(math.cos(th), math.sin(th))
        out.append(CaratheodoryAtoms((Atom(1.0, u),)))
    return out


def antipodal_family(points: int = BOUNDARY_POINTS) -> list[CaratheodoryAtoms]:
    """Pairs ``{(1/2, u), (1/2, -u)}`` with unimodular ``u``: c_1 = 0, |c_2| = 2."""
    out = []
    for k in range(points):
        th = math.pi * k / points
        u = complex(1.0, 0.0) if k == 0 else complex(math.cos(th), math.sin(th))
        out.append(CaratheodoryAtoms((Atom(0.5, u), Atom(0.5, -u))))
    return out


@dataclass
class _TrialResult:
    origin: str
    index: int
    atoms: dict
    abs_b0: float
    abs_b1: float
    admitted: bool
    q_min_real: float
    tail_estimate: float
    g: dict = field(repr=False, default_factory=dict)


def _run_trial(job) -> _TrialResult:
    origin, index, p, spec, depth, radii, samples, q_tol, tail_tol = job
    c = build(p, spec, depth)
    m = check_membership(c, radii, samples, q_tol=q_tol, tail_tol=tail_tol, series_check=False)
    return _TrialResult(
        origin,
        index,
        p.to_json_obj(),
        abs(complex(c.b(0))),
        abs(complex(c.b(1))),
        m.admitted,
        m.q_min_real,
        m.tail_estimate,
        c.g.series.to_json_obj(),
    )


def _execute(jobs, workers: int):
    if workers <= 1 or len(jobs) < 2:
        return [_run_trial(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(_run_trial, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


@dataclass
class BoundReport:
    spec: ClassSpec
    bound_b0: float | None
    bound_b1: float | None
    observed_max_b0: float
    observed_max_b1: float
    ratio_b0: float | None
    ratio_b1: float | None
    trials: int
    rejected: int
    boundary_trials: int
    observed_max_b0_all: float
    observed_max_b1_all: float
    counterexamples: list
    config: dict
    unsupported: bool = False
    caveats: tuple = (CAVEAT,)

    @property
    def counterexample_candidate(self) -> bool:
        return bool(self.counterexamples)

    @property
    def admitted(self) -> int:
        return self.trials + self.boundary_trials - self.rejected

    def to_json_obj(self) -> dict:
        return {
            "admitted": self.admitted,
            "bound_b0": self.bound_b0,
            "bound_b1": self.bound_b1,
            "boundary_trials": self.boundary_trials,
            "caveats": list(self.caveats),
            "config": self.config,
            "counterexample_candidate": self.counterexample_candidate,
            "counterexamples": self.counterexamples,
            "observed_max_b0": self.observed_max_b0,
            "observed_max_b0_all": self.observed_max_b0_all,
            "observed_max_b1": self.observed_max_b1,
            "observed_max_b1_all": self.observed_max_b1_all,
            "ratio_b0": self.ratio_b0,
            "ratio_b1": self.ratio_b1,
            "rejected": self.rejected,
            "spec": self.spec.to_json_obj(),
            "trials": self.trials,
            "unsupported": self.unsupported,
        }


def _sweep_config(spec, trials, seed, depth, radii, samples, max_atoms, q_tol, tail_tol):
    return {
        "seed": seed,
        "trials": trials,
        "depth": depth,
        "radii": list(radii),
        "samples": samples,
        "max_atoms": max_atoms,
        "q_tol": q_tol,
        "tail_tol": tail_tol,
        "ratio_tol": RATIO_TOL,
        "spec": spec.to_json_obj(),
    }


def sweep(
    spec: ClassSpec,
    trials: int,
    seed: int,
    *,
    depth: int = 16,
    radii=DEFAULT_RADII,
    samples: int = DEFAULT_SAMPLES,
    max_atoms: int = 4,
    q_tol: float = Q_TOL,
    tail_tol: float = TAIL_TOL,
    boundary_points: int = BOUNDARY_POINTS,
    workers: int = 1,
) -> BoundReport:
    """Largest admitted ``|b_0|``, ``|b_1|`` over random and boundary data.

    Trial ``i`` draws its datum from seed ``(seed, i)``, so results do not
    depend on execution order or worker count.
    """
    if trials < 0:
        raise ValueError("trials must be >= 0")
    unsupported = spec.kind is ClassKind.BAZILEVIC and float(spec.beta) >= 1
    if unsupported:
        # beta = 1 (and other integers) zero a pivot; nothing can be constructed
        spec.check_pivots(depth)
    radii = tuple(float(r) for r in radii)
    jobs = [("boundary", k, p, spec, depth, radii, samples, q_tol, tail_tol)
            for k, p in enumerate(boundary_family(boundary_points))]
    jobs += [("random", i, sample_random([seed, i], max_atoms), spec, depth, radii, samples, q_tol, tail_tol)
             for i in range(trials)]
    results = _execute(jobs, workers)

    if unsupported:
        bound_b0 = bound_b1 = None
    else:
        bound_b0, bound_b1 = theorem_bounds(spec)
    admitted = [r for r in results if r.admitted]
    ob0 = max((r.abs_b0 for r in admitted), default=0.0)
    ob1 = max((r.abs_b1 for r in admitted), default=0.0)
    counter = []
    if not unsupported:
        for r in admitted:
            rb0 = _ratio(r.abs_b0, bound_b0)
            rb1 = _ratio(r.abs_b1, bound_b1)
            if rb0 > 1 + RATIO_TOL or rb1 > 1 + RATIO_TOL:
                counter.append(
                    {
                        "origin": r.origin,
                        "index": r.index,
                        "seed": [seed, r.index] if r.origin == "random" else None,
                        "atoms": r.atoms,
                        "abs_b0": r.abs_b0,
                        "abs_b1": r.abs_b1,
                        "ratio_b0": rb0,
                        "ratio_b1": rb1,
                        "q_min_real": r.q_min_real,
                        "tail_estimate": r.tail_estimate,
                        "g": r.g,
                    }
                )
    counter.sort(key=lambda d: (d["origin"], d["index"]))
    caveats = (CAVEAT,)
    if unsupported:
        caveats += ("beta >= 1: the published b_0 bound is non-positive; bounds not evaluated",)
    return BoundReport(
        spec=spec,
        bound_b0=bound_b0,
        bound_b1=bound_b1,
        observed_max_b0=ob0,
        observed_max_b1=ob1,
        ratio_b0=None if unsupported else _ratio(ob0, bound_b0),
        ratio_b1=None if unsupported else _ratio(ob1, bound_b1),
        trials=trials,
        rejected=len(results) - len(admitted),
        boundary_trials=boundary_points,
        observed_max_b0_all=max((r.abs_b0 for r in results), default=0.0),
        observed_max_b1_all=max((r.abs_b1 for r in results), default=0.0),
        counterexamples=counter,
        config=_sweep_config(spec, trials, seed, depth, radii, samples, max_atoms, q_tol, tail_tol),
        unsupported=unsupported,
        caveats=caveats,
    )


def _ratio(x: float, bound: float) -> float:
    if bound == 0:
        return 0.0 if x == 0 else math.inf
    return x / bound


@dataclass
class B0ZeroReport:
    spec: ClassSpec
    printed_bound_b1: float
    derived_bound_b1: float
    observed_max_b1: float
    observed_max_b1_all: float
    observed_max_abs_b0: float
    ratio_printed: float
    ratio_derived: float
    trials: int
    rejected: int
    boundary_trials: int
    config: dict

    def to_json_obj(self) -> dict:
        return {
            "boundary_trials": self.boundary_trials,
            "config": self.config,
            "derived_bound_b1": self.derived_bound_b1,
            "observed_max_abs_b0": self.observed_max_abs_b0,
            "observed_max_b1": self.observed_max_b1,
            "observed_max_b1_all": self.observed_max_b1_all,
            "printed_bound_b1": self.printed_bound_b1,
            "ratio_derived": self.ratio_derived,
            "ratio_printed": self.ratio_printed,
            "rejected": self.rejected,
            "spec": self.spec.to_json_obj(),
            "trials": self.trials,
        }


def sweep_b0_zero(
    spec: ClassSpec,
    trials: int,
    seed: int,
    *,
    depth: int = 16,
    radii=DEFAULT_RADII,
    samples: int = DEFAULT_SAMPLES,
    max_atoms: int = 3,
    q_tol: float = Q_TOL,
    tail_tol: float = TAIL_TOL,
    boundary_points: int = BOUNDARY_POINTS,
    workers: int = 1,
) -> B0ZeroReport:
    """Sweep restricted to data with ``c_1 = 0`` (hence ``b_0 = 0``).

    Both the printed and the re-derived ``|b_1|`` bounds are tabulated;
    neither is asserted here.
    """
    radii = tuple(float(r) for r in radii)
    jobs = [("boundary", k, p, spec, depth, radii, samples, q_tol, tail_tol)
            for k, p in enumerate(antipodal_family(boundary_points))]
    jobs += [("random", i, sample_centered([seed, i], max_atoms), spec, depth, radii, samples, q_tol, tail_tol)
             for i in range(trials)]
    results = _execute(jobs, workers)
    bounds = b0_zero_bounds(spec)
    admitted = [r for r in results if r.admitted]
    ob1 = max((r.abs_b1 for r in admitted), default=0.0)
    return B0ZeroReport(
        spec=spec,
        printed_bound_b1=bounds["printed"],
        derived_bound_b1=bounds["derived"],
        observed_max_b1=ob1,
        observed_max_b1_all=max((r.abs_b1 for r in results), default=0.0),
        observed_max_abs_b0=max((r.abs_b0 for r in results), default=0.0),
        ratio_printed=_ratio(ob1, bounds["printed"]),
        ratio_derived=_ratio(ob1, bounds["derived"]),
        trials=trials,
        rejected=len(results) - len(admitted),
        boundary_trials=boundary_points,
        config=_sweep_config(spec, trials, seed, depth, radii, samples, max_atoms, q_tol, tail_tol),
    )


# ---------------------------------------------------------------------------


def springer_bound(n: int) -> Fraction:
    """``(2n-2)! / (n! (n-1)!)``, the Catalan number ``C_{n-1}``."""
    return Fraction(math.factorial(2 * n - 2), math.factorial(n) * math.factorial(n - 1))


def springer_report(g: MeromorphicMap, n_max: int) -> list[tuple]:
    """Rows ``(n, |B_{2n-1}|, bound, ratio)`` for n = 1..n_max.

    Exact rational entries are kept as Fractions where possible.
    """
    if g.b(0) != 0:
        raise ValueError("springer_report expects b_0 = 0")
    depth = 2 * n_max - 1
    h = invert(g, depth)
    rows = []
    for n in range(1, n_max + 1):
        B = h.B(2 * n - 1)
        mag = abs(B)
        if isinstance(mag, complex):
            mag = abs(mag)
        bound = springer_bound(n)
        rows.append((n, mag, bound, mag / bound if isinstance(mag, Fraction) else float(mag) / float(bound)))
    return rows


def bound_grid_csv(reports) -> str:
    """CSV table of bound-vs-observed values, one row per report."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([
        "class", "alpha", "beta", "bound_b0", "observed_max_b0", "ratio_b0",
        "bound_b1", "observed_max_b1", "ratio_b1", "trials", "rejected", "counterexamples",
    ])
    for r in reports:
        s = r.spec
        w.writerow([
            s.kind.value, _fmt(float(s.alpha)), "" if s.beta is None else _fmt(float(s.beta)),
            _fmt(r.bound_b0), _fmt(r.observed_max_b0), _fmt(r.ratio_b0),
            _fmt(r.bound_b1), _fmt(r.observed_max_b1), _fmt(r.ratio_b1),
            r.trials, r.rejected, len(r.counterexamples),
        ])
    return buf.getvalue()


def _fmt(x) -> str:
    if x is None:
        return ""
    return format(float(x), ".17g")


__all__ = [
    "MembershipReport",
    "BoundReport",
    "B0ZeroReport",
    "theorem_bounds",
    "b0_zero_bounds",
    "check_membership",
    "sweep",
    "sweep_b0_zero",
    "springer_report",
    "springer_bound",
    "bound_grid_csv",
    "boundary_family",
    "antipodal_family",
]
