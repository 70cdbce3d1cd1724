"""Acceptance sets and coherence checks in transformed utility space.

An acceptance set is a finite family of gambles a decision maker has
committed to accept, together with the utility transform under which those
commitments are read.  The set's closure is the convex cone generated in
transformed space by the committed gambles and every nonnegative vector
(accepting sure gains costs nothing).  Three questions are answered by
linear programming over that cone:

* does the closure contain a candidate gamble (``cone_membership``),
* does it stay clear of uniformly negative positions
  (``avoids_partial_loss``), and
* is there a single probability-like functional that signs off on every
  commitment at once (``find_representing_functional``).

The last two are dual descriptions of the same property.  Writing U for
the matrix whose columns are transformed committed gambles, the worst
guaranteed outcome of a convex mixture, minimized over mixtures, equals
the best uniform margin a normalized functional can grant all commitments;
this is the minimax identity for the finite game with payoff matrix U.
Both checks therefore use the same threshold so they return the same
verdict up to solver roundoff, and the pair is kept as two genuinely
independent routes to that verdict rather than one calling the other.

All witnesses (mixture weights, separating functionals, representing
weights) come from a deterministic Bland-rule simplex, so repeated runs
return identical certificates.
"""

from __future__ import annotations

from dataclasses import dataclass
from collections.abc import Iterable, Sequence

import numpy as np

from .core import Gamble, ProbabilityMeasure, StateSpace, _require_same_space
from .errors import DomainError, SolverFailure
from .simplex import INFEASIBLE, OPTIMAL, LpSolution, solve_lp
from .utility import UtilitySpec, forward, format_utility, in_domain, identity_utility

__all__ = [
    "AcceptanceSet",
    "RepresentingFunctional",
    "MembershipResult",
    "PartialLossResult",
    "FunctionalSearchResult",
    "cone_membership",
    "avoids_partial_loss",
    "find_representing_functional",
    "evaluate",
    "accepts",
    "upward_closure_check",
]

DEFAULT_EPSILON = 1e-9


@dataclass(frozen=True)
class AcceptanceSet:
    """A finite set of committed gambles read through one utility transform.

    Duplicate commitments (same reward vector bit for bit) are dropped at
    construction; every commitment must lie inside the transform's domain
    in every state, since the cone is built from transformed values.
    """

    space: StateSpace
    generators: tuple[Gamble, ...]
    utility: UtilitySpec

    def __post_init__(self) -> None:
        seen: dict[bytes, Gamble] = {}
        for g in self.generators:
            _require_same_space(self.space, g.space, "acceptance set")
            ok = np.atleast_1d(in_domain(self.utility, g.rewards))
            if not ok.all():
                i = int(np.flatnonzero(~ok)[0])
                raise DomainError(
                    f"committed gamble leaves the domain of "
                    f"{format_utility(self.utility)} at outcome "
                    f"{self.space.labels[i]!r}: reward {float(g.rewards[i])!r}"
                )
            seen.setdefault(g.rewards.tobytes(), g)
        object.__setattr__(self, "generators", tuple(seen.values()))

    @classmethod
    def classical(cls, space: StateSpace, generators: Iterable[Gamble]) -> AcceptanceSet:
        """An acceptance set read through the identity transform."""
        return cls(space, tuple(generators), identity_utility())

    def __len__(self) -> int:
        return len(self.generators)

    def transformed_matrix(self) -> np.ndarray:
        """Matrix with one column per commitment, rows indexed by state."""
        m = len(self.space)
        if not self.generators:
            return np.zeros((m, 0))
        return np.column_stack(
            [np.asarray(forward(self.utility, g.rewards)) for g in self.generators]
        )


@dataclass(frozen=True)
class RepresentingFunctional:
    """Nonnegative normalized state weights acting as a linear evaluator."""

    space: StateSpace
    weights: np.ndarray

    def __post_init__(self) -> None:
        w = np.asarray(self.weights, dtype=np.float64)
        if w.shape != (len(self.space),):
            raise ValueError(
                f"weights must have one entry per state, got shape {w.shape}"
            )
        if np.any(w < 0.0) or abs(float(w.sum()) - 1.0) > 1e-9:
            raise ValueError("weights must be nonnegative and sum to 1")
        w = w.copy()
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    def as_measure(self) -> ProbabilityMeasure:
        total = float(self.weights.sum())
        return ProbabilityMeasure(self.space, self.weights / total)

    def __call__(self, values: np.ndarray) -> float:
        return float(self.weights @ np.asarray(values, dtype=np.float64))


@dataclass(frozen=True)
class MembershipResult:
    """Verdict of a cone-membership query.

    Accepted: ``coefficients`` (one per commitment) and ``slack`` (one per
    state) witness the conic decomposition, and ``margin`` is the sup-norm
    reconstruction residual.  Rejected: ``certificate`` holds normalized
    nonnegative state weights that value every commitment at or above zero
    yet value the candidate at ``margin`` (strictly negative).
    """

    accepted: bool
    coefficients: np.ndarray | None
    slack: np.ndarray | None
    certificate: np.ndarray | None
    margin: float


@dataclass(frozen=True)
class PartialLossResult:
    """Verdict on uniform-loss exposure.

    When ``avoids`` is False, ``witness`` is a convex mixture of
    commitments whose transformed value stays at or below ``worst_value``
    (itself below the negative threshold) in every state.
    """

    avoids: bool
    witness: np.ndarray | None
    worst_value: float | None


@dataclass(frozen=True)
class FunctionalSearchResult:
    """Outcome of the search for a representing functional.

    ``margin`` is the best uniform transformed value any admissible
    functional can grant all commitments (None when there are none to
    constrain it).  The ``lp_*`` fields describe the polytope of admissible
    weight vectors: rows of ``lp_a_ub @ p <= lp_b_ub`` encode the
    commitment constraints and ``lp_a_eq @ p == lp_b_eq`` the
    normalization; nonnegativity of ``p`` is implicit.
    """

    feasible: bool
    functional: RepresentingFunctional | None
    margin: float | None
    lp_a_ub: np.ndarray
    lp_b_ub: np.ndarray
    lp_a_eq: np.ndarray
    lp_b_eq: np.ndarray


def _transformed_candidate(d: AcceptanceSet, f: Gamble) -> np.ndarray:
    _require_same_space(d.space, f.space, "membership query")
    ok = np.atleast_1d(in_domain(d.utility, f.rewards))
    if not ok.all():
        i = int(np.flatnonzero(~ok)[0])
        raise DomainError(
            f"candidate leaves the domain of {format_utility(d.utility)} at outcome "
            f"{d.space.labels[i]!r}: reward {float(f.rewards[i])!r}"
        )
    return np.asarray(forward(d.utility, f.rewards))


def _require_status(sol: LpSolution, context: str) -> None:
    if sol.status not in (OPTIMAL, INFEASIBLE):
        raise SolverFailure(f"{context}: solver returned status {sol.status!r}")


def cone_membership(d: AcceptanceSet, f: Gamble) -> MembershipResult:
    """Decide whether the set's closure contains the candidate.

    Feasibility problem: find commitment weights lambda >= 0 and state
    slacks s >= 0 with  U lambda + s = u(f).  On success the witness is
    returned with its reconstruction residual; on failure a separating
    functional is recovered from a second, margin-minimizing program
    (minimize c.u(f) over normalized c >= 0 that value every commitment
    nonnegatively), so the certificate is itself a deterministic vertex.
    """
    uf = _transformed_candidate(d, f)
    m = len(d.space)
    k = len(d.generators)
    u_mat = d.transformed_matrix()

    a_eq = np.concatenate([u_mat, np.eye(m)], axis=1)
    sol = solve_lp(np.zeros(k + m), a_eq=a_eq, b_eq=uf)
    _require_status(sol, "cone membership")
    if sol.status == OPTIMAL:
        lam = sol.x[:k]
        slack = sol.x[k:]
        residual = float(np.max(np.abs(a_eq @ sol.x - uf))) if m else 0.0
        return MembershipResult(
            accepted=True,
            coefficients=lam,
            slack=slack,
            certificate=None,
            margin=residual,
        )

    # Separation program over normalized nonnegative functionals.
    sep = solve_lp(
        uf,
        a_eq=np.ones((1, m)),
        b_eq=np.array([1.0]),
        a_ub=-u_mat.T if k else None,
        b_ub=np.zeros(k) if k else None,
    )
    _require_status(sep, "membership separation")
    if sep.status != OPTIMAL:
        raise SolverFailure(
            "membership separation program was infeasible although the "
            "candidate was rejected"
        )
    return MembershipResult(
        accepted=False,
        coefficients=None,
        slack=None,
        certificate=sep.x,
        margin=float(sep.objective),
    )


def avoids_partial_loss(
    d: AcceptanceSet, *, epsilon: float = DEFAULT_EPSILON
) -> PartialLossResult:
    """Check that no convex mixture of commitments is uniformly negative.

    Solves  minimize t  over mixtures lambda in the simplex with
    U lambda <= t  in every state, splitting the free ceiling t into a
    difference of nonnegative parts.  The set avoids partial loss exactly
    when the optimum exceeds ``-epsilon``; otherwise the optimal mixture is
    the witness.  An empty set avoids partial loss vacuously.
    """
    if not d.generators:
        return PartialLossResult(avoids=True, witness=None, worst_value=None)
    m = len(d.space)
    k = len(d.generators)
    u_mat = d.transformed_matrix()

    # Variables: lambda (k), t_plus, t_minus.
    cost = np.concatenate([np.zeros(k), [1.0, -1.0]])
    a_ub = np.concatenate([u_mat, -np.ones((m, 1)), np.ones((m, 1))], axis=1)
    a_eq = np.concatenate([np.ones((1, k)), np.zeros((1, 2))], axis=1)
    sol = solve_lp(cost, a_eq=a_eq, b_eq=np.array([1.0]), a_ub=a_ub, b_ub=np.zeros(m))
    _require_status(sol, "partial-loss check")
    if sol.status != OPTIMAL:
        raise SolverFailure("partial-loss program should always be feasible and bounded")
    worst = float(sol.objective)
    if worst > -epsilon:
        return PartialLossResult(avoids=True, witness=None, worst_value=worst)
    return PartialLossResult(avoids=False, witness=sol.x[:k], worst_value=worst)


def find_representing_functional(
    d: AcceptanceSet, *, epsilon: float = DEFAULT_EPSILON
) -> FunctionalSearchResult:
    """Search for one normalized functional that values every commitment
    nonnegatively, maximizing the worst margin it grants.

    Solves  maximize delta  over weights p in the simplex with
    p . u(g) >= delta  for every commitment g.  The search succeeds exactly
    when the optimal margin exceeds ``-epsilon``, mirroring the
    partial-loss threshold on the dual side; tiny negative weight entries
    from roundoff are clipped before the functional is built.  With no
    commitments every functional qualifies and the uniform one is returned.
    """
    m = len(d.space)
    k = len(d.generators)
    u_mat = d.transformed_matrix()
    lp_a_ub = -u_mat.T
    lp_b_ub = np.zeros(k)
    lp_a_eq = np.ones((1, m))
    lp_b_eq = np.array([1.0])
    if k == 0:
        return FunctionalSearchResult(
            feasible=True,
            functional=RepresentingFunctional(d.space, np.full(m, 1.0 / m)),
            margin=None,
            lp_a_ub=lp_a_ub,
            lp_b_ub=lp_b_ub,
            lp_a_eq=lp_a_eq,
            lp_b_eq=lp_b_eq,
        )

    # Variables: p (m), delta_plus, delta_minus; maximize delta.
    cost = np.concatenate([np.zeros(m), [-1.0, 1.0]])
    a_ub = np.concatenate([-u_mat.T, np.ones((k, 1)), -np.ones((k, 1))], axis=1)
    a_eq = np.concatenate([np.ones((1, m)), np.zeros((1, 2))], axis=1)
    sol = solve_lp(cost, a_eq=a_eq, b_eq=np.array([1.0]), a_ub=a_ub, b_ub=np.zeros(k))
    _require_status(sol, "functional search")
    if sol.status != OPTIMAL:
        raise SolverFailure("functional-search program should always be feasible and bounded")
    margin = -float(sol.objective)
    if margin <= -epsilon:
        return FunctionalSearchResult(
            feasible=False,
            functional=None,
            margin=margin,
            lp_a_ub=lp_a_ub,
            lp_b_ub=lp_b_ub,
            lp_a_eq=lp_a_eq,
            lp_b_eq=lp_b_eq,
        )
    p = np.clip(sol.x[:m], 0.0, None)
    p = p / float(p.sum())
    return FunctionalSearchResult(
        feasible=True,
        functional=RepresentingFunctional(d.space, p),
        margin=margin,
        lp_a_ub=lp_a_ub,
        lp_b_ub=lp_b_ub,
        lp_a_eq=lp_a_eq,
        lp_b_eq=lp_b_eq,
    )


def evaluate(
    u: UtilitySpec,
    f: Gamble,
    p: ProbabilityMeasure | RepresentingFunctional,
) -> float:
    """Expected transformed value of a gamble under a weighting.

    Accepts either a probability measure or a representing functional; for
    the log1p transform the result is the expected log return.
    """
    _require_same_space(f.space, p.space, "evaluation")
    values = forward(u, f.rewards)
    return float(np.asarray(p.weights) @ np.asarray(values))


def accepts(
    u: UtilitySpec,
    f: Gamble,
    p: ProbabilityMeasure | RepresentingFunctional,
    *,
    tol: float = 1e-12,
) -> bool:
    """True when the weighting values the gamble at or above zero.

    The tolerance absorbs roundoff so a gamble valued at exactly zero, up
    to floating noise, still counts as accepted.
    """
    return evaluate(u, f, p) >= -tol


def upward_closure_check(d: AcceptanceSet, f: Gamble, g: Gamble) -> bool:
    """Membership verdict for ``g``, anchored to an accepted ``f``.

    Whenever g >= f statewise, g = f + (g - f) with a nonnegative
    remainder, so g must land in the closure too; this check re-derives
    the verdict for ``g`` through the solver rather than assuming it, and
    must come back accepted in the dominating case.
    """
    if not cone_membership(d, f).accepted:
        raise ValueError("upward closure is only meaningful from an accepted gamble")
    return cone_membership(d, g).accepted
