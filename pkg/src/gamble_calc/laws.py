"""Randomized audits of the combination operator's algebraic laws.

For a given transform the operator should be associative, commutative,
neutral at the zero gamble (when the transform fixes 0), and monotone in
each operand.  Each law is checked on a large batch of random reward
vectors drawn from a closure-safe box for that transform, i.e. a region
where transformed sums provably stay invertible, so a law failure can
only mean a genuine algebra or numerics defect rather than a domain
escape.  Sampling is vectorized: one batch holds every trial's rewards,
and residuals are reduced with a max.

Boxes by kind: identity and log1p draw from wide real or above minus-one
boxes; power draws nonnegative (bounded away from 0 for negative
exponents); the exponential kind draws from [-3, 0], where transformed
values are nonpositive and any two or three of them sum inside the range
bound of 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .utility import (
    UtilitySpec,
    check_well_behaved,
    format_utility,
    forward,
    has_zero_identity,
    inverse,
    supports_combination,
)

__all__ = ["LawResult", "LawsReport", "run_laws", "sampling_box"]

DEFAULT_THRESHOLD = 1e-9


@dataclass(frozen=True)
class LawResult:
    """One law's worst residual over the batch."""

    name: str
    trials: int
    max_residual: float
    threshold: float
    passed: bool


@dataclass(frozen=True)
class LawsReport:
    """All law results for one transform, plus the sampling region used."""

    utility: UtilitySpec
    trials: int
    seed: int
    states: int
    box_low: float
    box_high: float
    results: tuple[LawResult, ...]
    all_passed: bool


def sampling_box(u: UtilitySpec) -> tuple[float, float]:
    """Closure-safe sampling box for a transform's law audit."""
    if u.kind == "identity":
        return (-10.0, 10.0)
    if u.kind == "log1p":
        return (-0.99, 10.0)
    if u.kind == "power":
        return (0.1, 10.0) if u.param < 0 else (0.0, 10.0)
    if u.kind == "exponential":
        # Transformed values are <= 0 here, so sums never approach the
        # range ceiling at 1.
        return (-3.0, 0.0)
    return (0.1, 10.0)  # discounted-shifted


def _combine_batch(u: UtilitySpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.asarray(inverse(u, np.asarray(forward(u, a)) + np.asarray(forward(u, b))))


def run_laws(
    u: UtilitySpec,
    trials: int = 10_000,
    seed: int = 0,
    *,
    states: int = 3,
    threshold: float = DEFAULT_THRESHOLD,
) -> LawsReport:
    """Audit the operator laws for one transform.

    Residuals are sup-norm differences between the two sides of each law
    over ``trials`` random reward vectors; the identity law is skipped for
    transforms that do not fix the origin, and a transform unfit for
    combination altogether (the unshifted discounted kind) is rejected
    outright.
    """
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")
    if not supports_combination(u):
        raise DomainError(
            f"{format_utility(u)} cannot drive the combination operator, "
            "so its laws are not auditable; use the shifted variant"
        )
    low, high = sampling_box(u)
    corners = check_well_behaved(u, [(low, low), (low, high), (high, high)])
    if not corners.closed_on_probes:
        raise DomainError(
            f"sampling box [{low!r}, {high!r}] is not closed under combination "
            f"for {format_utility(u)}: {corners.symbolic_verdict}"
        )
    rng = np.random.default_rng(seed)

    def draw() -> np.ndarray:
        return rng.uniform(low, high, size=(trials, states))

    f, g, h = draw(), draw(), draw()
    results = []

    fg_then_h = _combine_batch(u, _combine_batch(u, f, g), h)
    f_then_gh = _combine_batch(u, f, _combine_batch(u, g, h))
    results.append(("associativity", float(np.max(np.abs(fg_then_h - f_then_gh)))))

    results.append(
        ("commutativity", float(np.max(np.abs(_combine_batch(u, f, g) - _combine_batch(u, g, f)))))
    )

    if has_zero_identity(u):
        with_zero = _combine_batch(u, f, np.zeros_like(f))
        results.append(("identity", float(np.max(np.abs(with_zero - f)))))

    # Monotonicity: combine the statewise max and min of a pair with the
    # same third operand; the ordering must survive combination.
    upper, lower = np.maximum(f, g), np.minimum(f, g)
    violation = np.max(_combine_batch(u, lower, h) - _combine_batch(u, upper, h))
    results.append(("monotonicity", float(max(0.0, violation))))

    if u.kind == "log1p":
        combined = _combine_batch(u, f, g)
        residual = np.max(np.abs(np.log1p(combined) - (np.log1p(f) + np.log1p(g))))
        results.append(("log-additivity", float(residual)))

    packaged = tuple(
        LawResult(
            name=name,
            trials=trials,
            max_residual=residual,
            threshold=threshold,
            passed=residual <= threshold,
        )
        for name, residual in results
    )
    return LawsReport(
        utility=u,
        trials=trials,
        seed=seed,
        states=states,
        box_low=low,
        box_high=high,
        results=packaged,
        all_passed=all(r.passed for r in packaged),
    )
