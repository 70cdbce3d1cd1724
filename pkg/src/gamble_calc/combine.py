"""Generalized combination of gambles through a utility transform.

Two gambles combine by adding their transformed rewards state by state and
mapping the sum back: ``u_inverse(u(f) + u(g))``.  Under the identity
transform this is ordinary addition; under ``log1p`` it compounds returns,
``(1 + f) * (1 + g) - 1``; under a bounded transform such as the
exponential kind the sum can escape the attainable range, in which case the
combination does not exist and a :class:`RangeError` reports the state where
closure failed.

The transformed-sum vector is kept on the result, because downstream checks
(additivity audits, coherence witnesses) operate in transformed space.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .core import Gamble, _require_same_space
from .errors import DomainError, RangeError
from .utility import (
    UtilitySpec,
    forward,
    in_domain,
    in_range,
    inverse,
    log1p_utility,
    format_utility,
    supports_combination,
)

__all__ = ["CombinationResult", "combine", "combine_seq", "log_additivity_check"]


@dataclass(frozen=True)
class CombinationResult:
    """A combined gamble together with its transformed-space audit trail.

    ``transformed_inputs`` holds u applied to each input, ``transformed_total``
    their running sum (which equals u of the combined gamble up to roundoff),
    and ``residual`` the largest per-state gap between u(combined) recomputed
    from the output and ``transformed_total``.
    """

    combined: Gamble
    utility: UtilitySpec
    transformed_inputs: tuple[np.ndarray, ...]
    transformed_total: np.ndarray
    residual: float

    @property
    def transformed_output(self) -> Gamble:
        """The per-state transformed values of the combined gamble.

        For the log1p transform these are log growth factors, so this
        gamble carries the log returns of the compound position.
        """
        return Gamble(self.combined.space, self.transformed_total)


def _check_domains(u: UtilitySpec, gambles: Sequence[Gamble]) -> None:
    for pos, g in enumerate(gambles):
        ok = np.atleast_1d(in_domain(u, g.rewards))
        if not ok.all():
            i = int(np.flatnonzero(~ok)[0])
            raise DomainError(
                f"input {pos} leaves the domain of {format_utility(u)} at outcome "
                f"{g.space.labels[i]!r}: reward {float(g.rewards[i])!r}"
            )


def _combine_many(u: UtilitySpec, gambles: Sequence[Gamble]) -> CombinationResult:
    if not gambles:
        raise ValueError("cannot combine an empty sequence of gambles")
    if not supports_combination(u):
        raise DomainError(
            f"{format_utility(u)} does not map 0 to 0, so transformed sums "
            "double-count its constant offset; use the discounted-shifted "
            "variant instead"
        )
    space = gambles[0].space
    for g in gambles[1:]:
        _require_same_space(space, g.space, "combination")
    _check_domains(u, gambles)

    transformed = tuple(np.asarray(forward(u, g.rewards)) for g in gambles)
    total = transformed[0].copy()
    for pos in range(1, len(transformed)):
        total += transformed[pos]
        ok = np.atleast_1d(in_range(u, total))
        if not ok.all():
            i = int(np.flatnonzero(~ok)[0])
            raise RangeError(
                f"combination leaves the range of {format_utility(u)} after "
                f"input {pos} at outcome {space.labels[i]!r}: transformed sum "
                f"{float(total[i])!r} is not attainable"
            )
    combined = Gamble(space, np.asarray(inverse(u, total)))
    recomputed = np.asarray(forward(u, combined.rewards))
    residual = float(np.max(np.abs(recomputed - total))) if total.size else 0.0
    return CombinationResult(
        combined=combined,
        utility=u,
        transformed_inputs=transformed,
        transformed_total=total,
        residual=residual,
    )


def combine(u: UtilitySpec, f: Gamble, g: Gamble) -> CombinationResult:
    """Combine two gambles under one shared transform.

    Both operands are interpreted through the same ``u``; mixing transforms
    has no defined meaning here and the signature does not admit it.

    Raises:
        SpaceMismatch: operands built over different state spaces.
        DomainError: an input reward falls outside the domain of ``u``, or
            ``u`` is the unshifted discounted kind.
        RangeError: the transformed sum escapes the range of ``u`` in some
            state, so no combined gamble exists there.
    """
    return _combine_many(u, (f, g))


def combine_seq(u: UtilitySpec, gambles: Sequence[Gamble]) -> CombinationResult:
    """Fold a nonempty sequence of gambles into one combined position.

    All transformed rewards are summed first and inverted once, rather than
    inverting after each pairwise step; intermediate range checks still run
    in sequence order so the failure message can name the input at which
    closure broke.
    """
    return _combine_many(u, tuple(gambles))


def log_additivity_check(f: Gamble, g: Gamble) -> float:
    """Residual of additivity in log space for the compounding combination.

    Combines ``f`` and ``g`` under ``log1p`` and returns the largest
    per-state difference between log1p(combined) and
    log1p(f) + log1p(g).  Exact additivity would give 0; anything at or
    below 1e-10 is within this package's contract.
    """
    u = log1p_utility()
    result = _combine_many(u, (f, g))
    lhs = np.asarray(forward(u, result.combined.rewards))
    rhs = np.asarray(forward(u, f.rewards)) + np.asarray(forward(u, g.rewards))
    return float(np.max(np.abs(lhs - rhs)))
