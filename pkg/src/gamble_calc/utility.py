"""Utility transforms and their inverses.

Five transform families are supported, each strictly increasing on its
domain.  A :class:`UtilitySpec` value names the family and carries its one
parameter, if any:

* ``identity``          u(x) = x                         on all reals
* ``log1p``             u(x) = log(1 + x)                on x > -1
* ``power``  (gamma)    u(x) = x**gamma / gamma          on x >= 0 (gamma > 0)
                                                         or x > 0 (gamma < 0)
* ``exponential`` (alpha) u(x) = 1 - exp(-alpha * x)     on all reals, alpha > 0
* ``discounted`` (alpha)  u(x) = (x**(1-alpha) - alpha) / (1-alpha) on x > 0,
                          0 <= alpha < 1

The discounted family does not map 0 to 0, which disqualifies it from the
combination operator; its ``shifted`` variant drops the additive constant,
u(x) = x**(1-alpha) / (1-alpha), restoring u(0+) = 0 while representing the
same preferences.

``forward`` and ``inverse`` accept scalars or numpy arrays and are exact
near zero (log1p/expm1 forms throughout).
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParseError, RangeError

__all__ = [
    "UtilitySpec",
    "identity_utility",
    "log1p_utility",
    "power_utility",
    "exponential_utility",
    "discounted_utility",
    "forward",
    "inverse",
    "in_domain",
    "in_range",
    "describe_domain",
    "has_zero_identity",
    "supports_combination",
    "relative_risk_aversion",
    "absolute_risk_aversion",
    "check_well_behaved",
    "ClosureProbe",
    "WellBehavedReport",
    "parse_utility",
    "format_utility",
]

_KINDS = ("identity", "log1p", "power", "exponential", "discounted")


@dataclass(frozen=True)
class UtilitySpec:
    """A named utility transform with at most one parameter.

    ``param`` is the power exponent for ``power``, the steepness for
    ``exponential``, and the discount degree for ``discounted``; it must be
    None for the parameter-free kinds.  ``shifted`` applies only to
    ``discounted`` and selects the variant renormalized to vanish at the
    origin.
    """

    kind: str
    param: float | None = None
    shifted: bool = False

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown utility kind {self.kind!r}; expected one of {_KINDS}")
        if self.kind in ("identity", "log1p"):
            if self.param is not None:
                raise ValueError(f"{self.kind} takes no parameter, got {self.param!r}")
        elif self.param is None or not np.isfinite(self.param):
            raise ValueError(f"{self.kind} requires a finite parameter")
        else:
            object.__setattr__(self, "param", float(self.param))
        if self.kind == "power" and self.param == 0.0:
            raise ValueError("power exponent must be nonzero")
        if self.kind == "exponential" and self.param <= 0.0:
            raise ValueError(f"exponential steepness must be positive, got {self.param!r}")
        if self.kind == "discounted" and not 0.0 <= self.param < 1.0:
            raise ValueError(f"discount degree must lie in [0, 1), got {self.param!r}")
        if self.shifted and self.kind != "discounted":
            raise ValueError("only the discounted kind has a shifted variant")

    # method mirrors of the module-level functions, for fluent use
    def forward(self, x):
        return forward(self, x)

    def inverse(self, y):
        return inverse(self, y)

    def in_domain(self, x):
        return in_domain(self, x)

    def in_range(self, y):
        return in_range(self, y)

    def describe_domain(self) -> str:
        return describe_domain(self)

    def has_zero_identity(self) -> bool:
        return has_zero_identity(self)

    def supports_combination(self) -> bool:
        return supports_combination(self)

    def relative_risk_aversion(self) -> float | None:
        return relative_risk_aversion(self)

    def absolute_risk_aversion(self) -> float | None:
        return absolute_risk_aversion(self)


def identity_utility() -> UtilitySpec:
    return UtilitySpec("identity")


def log1p_utility() -> UtilitySpec:
    return UtilitySpec("log1p")


def power_utility(gamma: float) -> UtilitySpec:
    return UtilitySpec("power", gamma)


def exponential_utility(alpha: float) -> UtilitySpec:
    return UtilitySpec("exponential", alpha)


def discounted_utility(alpha: float, shifted: bool = False) -> UtilitySpec:
    return UtilitySpec("discounted", alpha, shifted)


def describe_domain(u: UtilitySpec) -> str:
    if u.kind in ("identity", "exponential"):
        return "all real x"
    if u.kind == "log1p":
        return "x > -1"
    if u.kind == "power":
        return "x >= 0" if u.param > 0 else "x > 0"
    return "x > 0"  # discounted


def in_domain(u: UtilitySpec, x: np.ndarray | float) -> np.ndarray | bool:
    """Elementwise domain test; finite values only count as inside."""
    arr = np.asarray(x, dtype=np.float64)
    ok = np.isfinite(arr)
    if u.kind == "log1p":
        ok = ok & (arr > -1.0)
    elif u.kind == "power":
        ok = ok & ((arr >= 0.0) if u.param > 0 else (arr > 0.0))
    elif u.kind == "discounted":
        ok = ok & (arr > 0.0)
    return ok if arr.ndim else bool(ok)


def in_range(u: UtilitySpec, y: np.ndarray | float) -> np.ndarray | bool:
    """Elementwise test that a value is attainable as u(x)."""
    arr = np.asarray(y, dtype=np.float64)
    ok = np.isfinite(arr)
    if u.kind == "power":
        ok = ok & ((arr >= 0.0) if u.param > 0 else (arr < 0.0))
    elif u.kind == "exponential":
        ok = ok & (arr < 1.0)
    elif u.kind == "discounted":
        if u.shifted:
            ok = ok & (arr > 0.0)
        else:
            alpha = u.param
            ok = ok & (arr > -alpha / (1.0 - alpha))
    return ok if arr.ndim else bool(ok)


def _describe_range(u: UtilitySpec) -> str:
    if u.kind in ("identity", "log1p"):
        return "all real y"
    if u.kind == "power":
        return "y >= 0" if u.param > 0 else "y < 0"
    if u.kind == "exponential":
        return "y < 1"
    if u.shifted:
        return "y > 0"
    return f"y > {-u.param / (1.0 - u.param)!r}"


def _first_violation(mask: np.ndarray | bool, arr: np.ndarray) -> float:
    flat_ok = np.atleast_1d(np.asarray(mask))
    flat = np.atleast_1d(arr)
    return float(flat[np.flatnonzero(~flat_ok)[0]])


def forward(u: UtilitySpec, x: np.ndarray | float):
    """Evaluate the transform.  Scalar in, float out; array in, array out.

    Raises:
        DomainError: when any entry falls outside the transform's domain.
    """
    arr = np.asarray(x, dtype=np.float64)
    ok = in_domain(u, arr)
    if not np.all(ok):
        bad = _first_violation(ok, arr)
        raise DomainError(
            f"{format_utility(u)} is defined on {describe_domain(u)}, got {bad!r}"
        )
    out = _forward_unchecked(u, arr)
    return float(out) if arr.ndim == 0 else out


def _forward_unchecked(u: UtilitySpec, arr: np.ndarray) -> np.ndarray:
    if u.kind == "identity":
        return arr.astype(np.float64, copy=True)
    if u.kind == "log1p":
        return np.log1p(arr)
    if u.kind == "power":
        return np.power(arr, u.param) / u.param
    if u.kind == "exponential":
        # 1 - exp(-a x) = -expm1(-a x), exact near zero
        return -np.expm1(-u.param * arr)
    alpha = u.param
    if u.shifted:
        return np.power(arr, 1.0 - alpha) / (1.0 - alpha)
    return (np.power(arr, 1.0 - alpha) - alpha) / (1.0 - alpha)


def inverse(u: UtilitySpec, y: np.ndarray | float):
    """Evaluate the inverse transform.

    Raises:
        RangeError: when any entry is not attainable as a forward value,
            e.g. y >= 1 for the exponential kind, whose forward saturates
            below 1.
    """
    arr = np.asarray(y, dtype=np.float64)
    ok = in_range(u, arr)
    if not np.all(ok):
        bad = _first_violation(ok, arr)
        raise RangeError(
            f"{format_utility(u)} attains only {_describe_range(u)}, cannot invert {bad!r}"
        )
    out = _inverse_unchecked(u, arr)
    return float(out) if arr.ndim == 0 else out


def _inverse_unchecked(u: UtilitySpec, arr: np.ndarray) -> np.ndarray:
    if u.kind == "identity":
        return arr.astype(np.float64, copy=True)
    if u.kind == "log1p":
        return np.expm1(arr)
    if u.kind == "power":
        return np.power(u.param * arr, 1.0 / u.param)
    if u.kind == "exponential":
        # y = 1 - exp(-a x)  =>  x = -log(1 - y) / a
        return -np.log1p(-arr) / u.param
    alpha = u.param
    if u.shifted:
        return np.power((1.0 - alpha) * arr, 1.0 / (1.0 - alpha))
    return np.power((1.0 - alpha) * arr + alpha, 1.0 / (1.0 - alpha))


def has_zero_identity(u: UtilitySpec) -> bool:
    """True when 0 lies in the domain and u(0) = 0 exactly.

    This is the condition for the zero gamble to act as a neutral element
    of the combination operator.
    """
    if u.kind in ("identity", "log1p", "exponential"):
        return True
    if u.kind == "power":
        return u.param > 0
    return False  # discounted: 0 is outside the domain either way


def supports_combination(u: UtilitySpec) -> bool:
    """True when the transform may drive the combination operator.

    The unshifted discounted transform is excluded: its value at the
    origin is -alpha/(1-alpha) rather than 0, so summing transformed
    rewards double-counts that constant.  Its shifted variant qualifies.
    """
    return u.kind != "discounted" or u.shifted or u.param == 0.0


def relative_risk_aversion(u: UtilitySpec) -> float | None:
    if u.kind == "power":
        return 1.0 - u.param
    if u.kind == "log1p":
        return 1.0
    if u.kind == "discounted":
        return u.param
    return None


def absolute_risk_aversion(u: UtilitySpec) -> float | None:
    if u.kind == "exponential":
        return u.param
    if u.kind == "identity":
        return 0.0
    return None


@dataclass(frozen=True)
class ClosureProbe:
    """One probed pair and whether its transformed sum stays invertible."""

    pair: tuple[float, float]
    transformed_sum: float
    sum_in_range: bool
    combined: float | None
    combined_in_domain: bool

    @property
    def closed(self) -> bool:
        return self.sum_in_range and self.combined_in_domain


@dataclass(frozen=True)
class WellBehavedReport:
    """Closure audit of a transform over probed pairs.

    A pair (x1, x2) is closed when u(x1) + u(x2) lies in the transform's
    range and the inverse of that sum lands back in the domain, i.e. the
    pair can actually be combined.  ``closed_on_probes`` is the
    conjunction over all probes; ``symbolic_verdict`` states the closure
    region of the kind as a whole, independent of the probes.
    """

    utility: UtilitySpec
    probes: tuple[ClosureProbe, ...]
    closed_on_probes: bool
    symbolic_verdict: str


def _symbolic_verdict(u: UtilitySpec) -> str:
    if u.kind == "identity":
        return "closed everywhere: transformed values cover all reals"
    if u.kind == "log1p":
        return "closed on x > -1: transformed values cover all reals"
    if u.kind == "power":
        if u.param > 0:
            return "closed on x >= 0: nonnegative transformed values sum to nonnegative values"
        return "closed on x > 0: negative transformed values sum to negative values"
    if u.kind == "exponential":
        a = u.param
        return (
            f"conditionally closed: a pair (x1, x2) combines only where "
            f"exp(-{a!r}*x1) + exp(-{a!r}*x2) > 1"
        )
    if u.shifted or u.param == 0.0:
        return "closed on x > 0: positive transformed values sum to positive values"
    return (
        "not combination-ready: the transform does not vanish at the "
        "origin; its shifted variant is closed on x > 0"
    )


def check_well_behaved(
    u: UtilitySpec, probes: Sequence[tuple[float, float]]
) -> WellBehavedReport:
    """Audit combination closure of a transform on specific pairs.

    Each probe pair must lie in the transform's domain (that is a
    precondition, not a finding); whether the pair's transformed sum is
    invertible is what the report records, one entry per pair, never an
    exception.
    """
    checked: list[ClosureProbe] = []
    for x1, x2 in probes:
        x1f, x2f = float(x1), float(x2)
        for value in (x1f, x2f):
            if not in_domain(u, value):
                raise DomainError(
                    f"probe value {value!r} is outside the domain of "
                    f"{format_utility(u)} ({describe_domain(u)})"
                )
        total = float(forward(u, x1f)) + float(forward(u, x2f))
        if not in_range(u, total):
            checked.append(
                ClosureProbe(
                    pair=(x1f, x2f),
                    transformed_sum=total,
                    sum_in_range=False,
                    combined=None,
                    combined_in_domain=False,
                )
            )
            continue
        combined = float(inverse(u, total))
        checked.append(
            ClosureProbe(
                pair=(x1f, x2f),
                transformed_sum=total,
                sum_in_range=True,
                combined=combined,
                combined_in_domain=bool(in_domain(u, combined)),
            )
        )
    return WellBehavedReport(
        utility=u,
        probes=tuple(checked),
        closed_on_probes=all(p.closed for p in checked),
        symbolic_verdict=_symbolic_verdict(u),
    )


def parse_utility(text: str) -> UtilitySpec:
    """Parse a utility specifier string.

    Grammar: ``identity`` | ``log1p`` | ``power:GAMMA`` | ``exp:ALPHA`` |
    ``discounted:ALPHA`` | ``discounted-shifted:ALPHA``, with parameters in
    any form ``float()`` accepts.
    """
    spec = text.strip()
    head, sep, tail = spec.partition(":")
    head = head.lower()
    try:
        if head in ("identity", "log1p"):
            if sep:
                raise ValueError(f"{head} takes no parameter")
            return UtilitySpec(head)
        if head in ("power", "exp", "discounted", "discounted-shifted"):
            if not sep or not tail.strip():
                raise ValueError(f"{head} requires a parameter, e.g. {head}:0.5")
            try:
                value = float(tail.strip())
            except ValueError:
                raise ValueError(f"cannot read {tail.strip()!r} as a number") from None
            if head == "power":
                return UtilitySpec("power", value)
            if head == "exp":
                return UtilitySpec("exponential", value)
            return UtilitySpec("discounted", value, shifted=head.endswith("shifted"))
        raise ValueError(
            "expected identity, log1p, power:GAMMA, exp:ALPHA, "
            "discounted:ALPHA, or discounted-shifted:ALPHA"
        )
    except ValueError as exc:
        raise ParseError(f"bad utility specifier {text!r}: {exc}") from None


def _format_param(value: float) -> str:
    if float(value).is_integer():
        return str(int(value))
    return repr(float(value))


def format_utility(u: UtilitySpec) -> str:
    """Canonical specifier string for a spec; inverse of :func:`parse_utility`."""
    if u.kind in ("identity", "log1p"):
        return u.kind
    if u.kind == "power":
        return f"power:{_format_param(u.param)}"
    if u.kind == "exponential":
        return f"exp:{_format_param(u.param)}"
    head = "discounted-shifted" if u.shifted else "discounted"
    return f"{head}:{_format_param(u.param)}"
