"""Exception hierarchy shared by every laurentbi module."""


class LaurentBiError(ValueError):
    """Base class for all library errors."""


class DomainMismatch(LaurentBiError):
    """Operands live in different coefficient domains (EXACT vs FLOAT)."""


class NotInvertible(LaurentBiError):
    """Reciprocal requested of a series whose leading coefficient is zero."""


class BadNormalization(LaurentBiError):
    """log/exp/pow called on a series violating its normalization."""


class DepthExhausted(LaurentBiError):
    """The requested depth exceeds the validity depth of the input."""


class OracleDiverged(LaurentBiError):
    """Newton iteration failed to converge."""


class OutsideDomain(LaurentBiError):
    """Sampling requested outside the certified part of 1 < |z| < oo."""


class DegeneratePivot(LaurentBiError):
    """A triangular solve hit a (near-)zero pivot."""


class MalformedTarget(LaurentBiError):
    """An inverse-side expression did not have constant term 1."""


class UnsupportedParameters(LaurentBiError):
    """Parameters outside the range where the bound formulas make sense."""
