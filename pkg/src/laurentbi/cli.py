"""``laurentbi`` command-line frontend.

Exit codes: 0 success, 1 tolerance failure under ``--strict``, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from fractions import Fraction

from . import __version__
from .caratheodory import CaratheodoryAtoms, parse_atoms
from .errors import LaurentBiError
from .inversion import catalan_map, empirical_inverse_radius, invert
from .jsonio import canonical_dumps, load_series_artifact, read_json, series_artifact
from .scalars import rational_str
from .series import MeromorphicMap
from .subclass import ClassKind, ClassSpec, build
from .verifier import (
    DEFAULT_RADII,
    DEFAULT_SAMPLES,
    Q_TOL,
    TAIL_TOL,
    bound_grid_csv,
    springer_report,
    sweep,
    sweep_b0_zero,
)

THREADS_ENV = "LAURENTBI_THREADS"
_NOT_ECHOED = {"func", "out", "replay"}


class UsageError(Exception):
    pass


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _workers() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    return max(1, n)


def _run_config(args) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k not in _NOT_ECHOED}
    # tuples would not survive a JSON round trip unchanged
    return {k: list(v) if isinstance(v, tuple) else v for k, v in cfg.items()}


def _emit(args, text: str):
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)


def _num(x):
    if isinstance(x, Fraction):
        return rational_str(x)
    return float(x)


def _spec(kind: str, alpha, beta=None) -> ClassSpec:
    kind = ClassKind(kind)
    if kind is ClassKind.BAZILEVIC:
        if beta is None:
            raise UsageError("--beta is required for the bazilevic class")
        return ClassSpec.bazilevic(beta, alpha)
    if beta is not None:
        raise UsageError("--beta only applies to the bazilevic class")
    return ClassSpec(kind, alpha)


def _spec_grid(args) -> list[ClassSpec]:
    if args.cls is None or args.alpha is None:
        raise UsageError("--class and --alpha are required (or --replay)")
    betas = args.beta if args.beta is not None else [None]
    return [_spec(args.cls, a, b) for b in betas for a in args.alpha]


def _load_map(path: str) -> MeromorphicMap:
    series, _meta = load_series_artifact(read_json(path))
    return MeromorphicMap(series)


# ---------------------------------------------------------------------------
# commands


def cmd_invert(args) -> int:
    g = _load_map(args.series)
    depth = g.valid_to if args.depth is None else args.depth
    h = invert(g, depth)
    meta = {
        "empirical_inverse_radius": empirical_inverse_radius(g, h) if args.radius else None,
        "run": _run_config(args),
    }
    _emit(args, canonical_dumps(series_artifact(h.series, meta)))
    return 0


def _atoms(args) -> CaratheodoryAtoms:
    if (args.atoms is None) == (args.atoms_file is None):
        raise UsageError("give exactly one of --atoms and --atoms-file")
    if args.atoms is not None:
        return parse_atoms(args.atoms, exact=True if args.exact else None)
    obj = read_json(args.atoms_file)
    if "atoms" not in obj and "atoms" in obj.get("meta", {}):
        obj = obj["meta"]
    return CaratheodoryAtoms.from_json_obj(obj)


def cmd_construct(args) -> int:
    p = _atoms(args)
    alpha = Fraction(args.alpha) if args.exact else float(args.alpha)
    beta = None
    if args.beta is not None:
        beta = Fraction(args.beta) if args.exact else float(args.beta)
    spec = _spec(args.cls, alpha, beta)
    c = build(p, spec, args.depth)
    meta = {
        "atoms": p.to_json_obj()["atoms"],
        "residual": float(c.residual()),
        "run": _run_config(args),
        "spec": spec.to_json_obj(),
    }
    _emit(args, canonical_dumps(series_artifact(c.g.series, meta)))
    return 0


def _sweep_kwargs(args) -> dict:
    return dict(
        depth=args.depth,
        radii=tuple(args.radii),
        samples=args.samples,
        q_tol=args.q_tol,
        tail_tol=args.tail_tol,
        workers=_workers(),
    )


def _replay(args):
    """Overwrite computational arguments with those echoed in a previous report."""
    obj = read_json(args.replay)
    run = obj.get("run")
    if not isinstance(run, dict) or run.get("command") != args.command:
        raise UsageError(f"{args.replay} holds no '{args.command}' run configuration")
    for k, v in run.items():
        if k not in _NOT_ECHOED:
            setattr(args, k, v)


def cmd_verify(args) -> int:
    if args.replay:
        _replay(args)
    reports = [sweep(s, args.trials, args.seed, **_sweep_kwargs(args)) for s in _spec_grid(args)]
    if args.format == "csv":
        text = bound_grid_csv(reports)
    elif len(reports) == 1:
        obj = reports[0].to_json_obj()
        obj["run"] = _run_config(args)
        text = canonical_dumps(obj)
    else:
        text = canonical_dumps({"reports": [r.to_json_obj() for r in reports], "run": _run_config(args)})
    _emit(args, text)
    if args.strict and any(r.counterexample_candidate for r in reports):
        print("counterexample candidate found", file=sys.stderr)
        return 1
    return 0


def cmd_sweep_b0zero(args) -> int:
    if args.replay:
        _replay(args)
    reports = [sweep_b0_zero(s, args.trials, args.seed, **_sweep_kwargs(args)) for s in _spec_grid(args)]
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["class", "alpha", "beta", "printed_bound_b1", "derived_bound_b1",
                    "observed_max_b1", "ratio_printed", "ratio_derived", "trials", "rejected"])
        for r in reports:
            s = r.spec
            w.writerow([s.kind.value, _g(s.alpha), "" if s.beta is None else _g(s.beta),
                        _g(r.printed_bound_b1), _g(r.derived_bound_b1), _g(r.observed_max_b1),
                        _g(r.ratio_printed), _g(r.ratio_derived), r.trials, r.rejected])
        text = buf.getvalue()
    else:
        text = canonical_dumps({"reports": [r.to_json_obj() for r in reports], "run": _run_config(args)})
    _emit(args, text)
    return 0


def _g(x) -> str:
    return format(float(x), ".17g")


def cmd_springer(args) -> int:
    if (args.series is None) == (not args.catalan):
        raise UsageError("give exactly one of --series and --catalan")
    g = catalan_map(2 * args.nmax - 1) if args.catalan else _load_map(args.series)
    rows = springer_report(g, args.nmax)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "abs_B", "bound", "ratio"])
        for n, mag, bound, ratio in rows:
            w.writerow([n, _str_num(mag), rational_str(bound), _str_num(ratio)])
        text = buf.getvalue()
    else:
        out = [{"n": n, "abs_B": _num(mag), "bound": rational_str(bound), "ratio": _num(ratio)}
               for n, mag, bound, ratio in rows]
        text = canonical_dumps({"rows": out, "run": _run_config(args)})
    _emit(args, text)
    return 0


def _str_num(x) -> str:
    return rational_str(x) if isinstance(x, Fraction) else _g(x)


def cmd_demo(args) -> int:
    h = invert(catalan_map(9), 9)
    lines = ["inverse of z + 1/z", " n   B_n"]
    for n in range(1, 10):
        B = h.B(n)
        lines.append(f"{n:2d}   {B}")
    _emit(args, "\n".join(lines) + "\n")
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    io_opts = argparse.ArgumentParser(add_help=False)
    io_opts.add_argument("--seed", type=int, default=0)
    io_opts.add_argument("--out", default=None, help="output file (default: stdout)")
    io_opts.add_argument("--format", choices=("json", "csv"), default="json")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--depth", type=int, default=16, help="number of inverse-power coefficients (default 16)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="output file (default: stdout)")
    common.add_argument("--format", choices=("json", "csv"), default="json")

    sampling = argparse.ArgumentParser(add_help=False)
    sampling.add_argument("--class", dest="cls", default=None, choices=[k.value for k in ClassKind])
    sampling.add_argument("--alpha", type=_float_list, default=None, help="value or comma list")
    sampling.add_argument("--beta", type=_float_list, default=None, help="value or comma list")
    sampling.add_argument("--trials", type=int, default=200)
    sampling.add_argument("--radii", type=_float_list, default=list(DEFAULT_RADII))
    sampling.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    sampling.add_argument("--q-tol", type=float, default=Q_TOL)
    sampling.add_argument("--tail-tol", type=float, default=TAIL_TOL)
    sampling.add_argument("--replay", default=None, help="re-run the configuration echoed in a report")

    ap = argparse.ArgumentParser(prog="laurentbi", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invert", parents=[io_opts], help="series of the compositional inverse")
    p.add_argument("--depth", type=int, default=None, help="default: validity depth of the input")
    p.add_argument("--series", required=True, help="series JSON of g")
    p.add_argument("--radius", action="store_true", help="also estimate where Newton agrees with the series")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("construct", parents=[common], help="build g from a Caratheodory datum")
    p.add_argument("--class", dest="cls", required=True, choices=[k.value for k in ClassKind])
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", default=None)
    p.add_argument("--atoms", default=None, help='inline datum, e.g. "0.5@1,0.5@-1"')
    p.add_argument("--atoms-file", default=None, help="JSON with an 'atoms' list")
    p.add_argument("--exact", action="store_true", help="rational arithmetic throughout")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common, sampling], help="bound sweep")
    p.add_argument("--strict", action="store_true", help="exit 1 on counterexample candidates")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep-b0zero", parents=[common, sampling], help="sweep restricted to b_0 = 0")
    p.set_defaults(func=cmd_sweep_b0zero)

    p = sub.add_parser("springer", parents=[common], help="|B_(2n-1)| against Catalan bounds")
    p.add_argument("--series", default=None)
    p.add_argument("--catalan", action="store_true", help="use z + 1/z")
    p.add_argument("--nmax", type=int, default=5)
    p.set_defaults(func=cmd_springer)

    p = sub.add_parser("demo", parents=[common], help="print a worked example")
    p.add_argument("name", choices=("catalan",))
    p.set_defaults(func=cmd_demo)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"laurentbi: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"laurentbi: {exc}", file=sys.stderr)
        return 2
    except (LaurentBiError, ValueError, KeyError, TypeError) as exc:
        print(f"laurentbi: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
