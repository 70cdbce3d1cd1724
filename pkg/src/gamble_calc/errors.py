"""Exception hierarchy for gamble-calc.

Every error raised deliberately by this package derives from
:class:`GambleCalcError`, so callers can catch one type at an API boundary.
The subclasses distinguish the handful of failure modes that calling code
treats differently (bad input domain vs. unreachable codomain vs. solver
breakdown), which is what the CLI uses to pick exit codes.
"""

from __future__ import annotations


class GambleCalcError(Exception):
    """Base class for all errors raised by gamble-calc."""


class DomainError(GambleCalcError, ValueError):
    """An input value lies outside the domain a transform is defined on."""


class RangeError(GambleCalcError, ValueError):
    """A value to invert lies outside the transform's attainable range."""


class SpaceMismatch(GambleCalcError, ValueError):
    """Two objects built over different state spaces were mixed."""


class SizeError(GambleCalcError, ValueError):
    """A requested computation exceeds an explicit size bound."""


class ModeError(GambleCalcError, ValueError):
    """An operation was requested for a simulation mode it is undefined in."""


class ParseError(GambleCalcError, ValueError):
    """Malformed file content or an unrecognized textual specifier."""


class SolverFailure(GambleCalcError, RuntimeError):
    """The linear-program solver could not reach a conclusive status."""
