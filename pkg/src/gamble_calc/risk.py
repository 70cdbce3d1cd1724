"""Risk measures induced by utility transforms.

Each transform u and probability weighting p induce the premium
rho(f) = -E_p[u(f)]: the sign convention makes larger values worse, and a
gamble counts as acceptable when its premium is at or below zero (up to
roundoff).  The exponential transform is the one exception worth care: its
induced premium is reported in certainty-equivalent form,
rho(f) = log(E_p[exp(-alpha f)]) / alpha, which keeps the constancy
property rho(c) = -c that the plain negative expectation of a bounded
transform would lose.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Gamble, ProbabilityMeasure, expectation, _require_same_space
from .errors import DomainError
from .utility import (
    UtilitySpec,
    absolute_risk_aversion,
    forward,
    format_utility,
    in_domain,
    relative_risk_aversion,
)

__all__ = [
    "RiskReport",
    "rho_power",
    "rho_exponential",
    "rho_log",
    "risk_report",
    "ACCEPTABLE_TOL",
]

ACCEPTABLE_TOL = 1e-12


def _check_domain(f: Gamble, u: UtilitySpec, what: str) -> None:
    ok = np.atleast_1d(in_domain(u, f.rewards))
    if not ok.all():
        i = int(np.flatnonzero(~ok)[0])
        raise DomainError(
            f"{what} needs rewards in {format_utility(u)}'s domain; outcome "
            f"{f.space.labels[i]!r} has {float(f.rewards[i])!r}"
        )


def rho_power(f: Gamble, p: ProbabilityMeasure, gamma: float) -> float:
    """Premium induced by the power transform with exponent in (0, 1).

    rho(f) = -E_p[f**gamma / gamma], defined for nonnegative rewards.
    """
    if not 0.0 < gamma < 1.0:
        raise ValueError(f"power premium expects an exponent in (0, 1), got {gamma!r}")
    _require_same_space(f.space, p.space, "power premium")
    if np.any(f.rewards < 0.0):
        i = int(np.flatnonzero(f.rewards < 0.0)[0])
        raise DomainError(
            f"power premium needs nonnegative rewards; outcome "
            f"{f.space.labels[i]!r} has {float(f.rewards[i])!r}"
        )
    return -float(p.weights @ (np.power(f.rewards, gamma) / gamma))


def rho_exponential(f: Gamble, p: ProbabilityMeasure, alpha: float) -> float:
    """Entropic premium  log(E_p[exp(-alpha f)]) / alpha  with alpha > 0.

    Evaluated through a max-shifted log-sum-exp so large negative rewards
    cannot overflow: with z = -alpha f and M = max z, the result is
    (M + log sum_i p_i exp(z_i - M)) / alpha.  Satisfies rho(c) = -c for
    constant c and approaches -E_p[f] as alpha tends to zero.
    """
    if alpha <= 0.0:
        raise ValueError(f"entropic premium expects positive steepness, got {alpha!r}")
    _require_same_space(f.space, p.space, "entropic premium")
    z = -alpha * f.rewards
    shift = float(np.max(z))
    total = float(p.weights @ np.exp(z - shift))
    return (shift + np.log(total)) / alpha


def rho_log(f: Gamble, p: ProbabilityMeasure) -> float:
    """Premium induced by the log1p transform: -E_p[log(1 + f)].

    Negative exactly when the gamble grows wealth on average per period
    under multiplicative dynamics.
    """
    _require_same_space(f.space, p.space, "log premium")
    if np.any(f.rewards <= -1.0):
        i = int(np.flatnonzero(f.rewards <= -1.0)[0])
        raise DomainError(
            f"log premium needs rewards above -1; outcome "
            f"{f.space.labels[i]!r} has {float(f.rewards[i])!r}"
        )
    return -float(p.weights @ np.log1p(f.rewards))


@dataclass(frozen=True)
class RiskReport:
    """One gamble's premium under one transform and weighting.

    ``expected_log_return`` carries the growth reading and is populated
    for the log1p transform only, where the premium is its exact
    negation; other kinds report None there.  The Arrow-Pratt fields echo
    the transform's curvature: a relative coefficient for the scale-free
    kinds, an absolute one for the exponential kind (whose relative
    coefficient varies with the reward level and so has no single value);
    whichever does not apply is None.
    """

    gamble_id: str
    utility: UtilitySpec
    measure: ProbabilityMeasure
    rho: float
    acceptable: bool
    arithmetic_expectation: float
    expected_log_return: float | None
    relative_risk_aversion: float | None
    absolute_risk_aversion: float | None


def risk_report(
    f: Gamble,
    p: ProbabilityMeasure,
    u: UtilitySpec,
    gamble_id: str = "gamble",
) -> RiskReport:
    """Premium of a gamble under the measure and transform, packaged.

    Dispatch: identity gives -E_p[f] (the premium is exactly the negated
    expectation); log1p gives the log premium; exponential gives the
    entropic premium at its steepness; power and discounted give
    -E_p[u(f)] directly.  A gamble is acceptable when its premium is at
    most 1e-12.
    """
    _require_same_space(f.space, p.space, "risk report")
    mean = expectation(f, p)
    log_return = None
    if u.kind == "identity":
        rho = -mean
    elif u.kind == "log1p":
        _check_domain(f, u, "risk report")
        log_return = float(p.weights @ np.log1p(f.rewards))
        rho = -log_return
    elif u.kind == "exponential":
        rho = rho_exponential(f, p, u.param)
    else:
        _check_domain(f, u, "risk report")
        rho = -float(p.weights @ np.asarray(forward(u, f.rewards)))
    return RiskReport(
        gamble_id=gamble_id,
        utility=u,
        measure=p,
        rho=float(rho),
        acceptable=bool(rho <= ACCEPTABLE_TOL),
        arithmetic_expectation=mean,
        expected_log_return=log_return,
        relative_risk_aversion=relative_risk_aversion(u),
        absolute_risk_aversion=absolute_risk_aversion(u),
    )
