"""Truncated Laurent series at infinity, compositional inversion, and
coefficient-bound experiments for meromorphic bi-univalent maps."""

__version__ = "0.1.0"

from .caratheodory import Atom, CaratheodoryAtoms, parse_atoms, sample_random, single_atom
from .errors import (
    BadNormalization,
    DegeneratePivot,
    DepthExhausted,
    DomainMismatch,
    LaurentBiError,
    MalformedTarget,
    NotInvertible,
    OracleDiverged,
    OutsideDomain,
    UnsupportedParameters,
)
from .inversion import InverseMap, catalan_map, compose, invert, newton_inverse_oracle
from .scalars import QQi, Domain
from .series import (
    LaurentSeries,
    MeromorphicMap,
    eval_at,
    exp_series,
    log_series,
    multiply,
    pow_real,
    reciprocal,
    z_log_derivative,
)
from .subclass import (
    ClassKind,
    ClassSpec,
    ConstructedMap,
    build,
    build_bazilevic,
    build_starlike,
    build_strongly_starlike,
    induced_q,
)
from .verifier import check_membership, springer_report, sweep, sweep_b0_zero, theorem_bounds

__all__ = [
    "Atom",
    "BadNormalization",
    "CaratheodoryAtoms",
    "ClassKind",
    "ClassSpec",
    "ConstructedMap",
    "DegeneratePivot",
    "DepthExhausted",
    "Domain",
    "DomainMismatch",
    "InverseMap",
    "LaurentBiError",
    "LaurentSeries",
    "MalformedTarget",
    "MeromorphicMap",
    "NotInvertible",
    "OracleDiverged",
    "OutsideDomain",
    "QQi",
    "UnsupportedParameters",
    "build",
    "build_bazilevic",
    "build_starlike",
    "build_strongly_starlike",
    "catalan_map",
    "check_membership",
    "compose",
    "eval_at",
    "exp_series",
    "induced_q",
    "invert",
    "log_series",
    "multiply",
    "newton_inverse_oracle",
    "parse_atoms",
    "pow_real",
    "reciprocal",
    "sample_random",
    "single_atom",
    "springer_report",
    "sweep",
    "sweep_b0_zero",
    "theorem_bounds",
    "z_log_derivative",
]
