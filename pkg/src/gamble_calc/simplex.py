"""A small dense linear-program solver.

Solves  minimize c.x  subject to  A_eq x = b_eq,  A_ub x <= b_ub,  x >= 0
by the two-phase primal simplex method on a dense tableau.  Pivots follow
Bland's rule (lowest eligible index enters, ties on the ratio test break
toward the lowest basic index), which rules out cycling and, just as
important here, makes every returned vertex a deterministic function of the
input: callers rely on witnesses being reproducible run to run.

The problems this package generates are tiny (tens of rows and columns), so
a dense tableau is the right tool; no sparsity, scaling, or revised-simplex
machinery is attempted.  Certificates are first-class: infeasible problems
return a Farkas vector ``y`` with ``y.A <= 0`` columnwise and ``y.b > 0``
(equality rows may take either sign in ``y``, inequality rows only
``y_i <= 0``), and optimal problems return the dual vector recovered from
the final basis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SolverFailure

__all__ = ["LpSolution", "solve_lp"]

_PIVOT_TOL = 1e-9
_CLEAN_TOL = 1e-13

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LpSolution:
    """Outcome of one solve.

    Exactly one of the three statuses is reported.  ``x``, ``objective``,
    ``slack`` and the duals are populated only for ``optimal``;
    ``certificate`` only for ``infeasible``.  Dual signs follow the
    minimization convention: ``dual_ub <= 0`` at optimality.
    """

    status: str
    x: np.ndarray | None = None
    objective: float | None = None
    slack: np.ndarray | None = None
    dual_eq: np.ndarray | None = None
    dual_ub: np.ndarray | None = None
    # Farkas vector over all rows, equality block first then inequality
    certificate: np.ndarray | None = None
    iterations: int = 0


def _as_matrix(a, n: int, name: str) -> np.ndarray:
    if a is None:
        return np.zeros((0, n))
    arr = np.asarray(a, dtype=np.float64)
    if arr.ndim != 2 or (n and arr.shape[1] != n):
        raise ValueError(f"{name} must be a 2-d matrix with {n} columns, got shape {arr.shape}")
    return arr


def _pivot(tableau: np.ndarray, row: int, col: int) -> None:
    tableau[row] /= tableau[row, col]
    factors = tableau[:, col].copy()
    factors[row] = 0.0
    tableau -= np.outer(factors, tableau[row])
    tableau[np.abs(tableau) < _CLEAN_TOL] = 0.0
    tableau[row, col] = 1.0


def _run_simplex(
    tableau: np.ndarray,
    basis: list[int],
    allowed_cols: int,
    budget: int,
) -> tuple[str, int]:
    """Iterate Bland pivots on a tableau whose last row is the reduced-cost
    row and last column the right-hand side.  Returns (status, pivots)."""
    body = tableau[:-1]
    used = 0
    while True:
        costs = tableau[-1, :allowed_cols]
        candidates = np.flatnonzero(costs < -_PIVOT_TOL)
        if candidates.size == 0:
            return OPTIMAL, used
        col = int(candidates[0])  # Bland: lowest improving index
        column = body[:, col]
        rows = np.flatnonzero(column > _PIVOT_TOL)
        if rows.size == 0:
            return UNBOUNDED, used
        ratios = body[rows, -1] / column[rows]
        best = np.min(ratios)
        tied = rows[ratios <= best + _CLEAN_TOL]
        row = int(min(tied, key=lambda r: basis[r]))
        _pivot(tableau, row, col)
        basis[row] = col
        used += 1
        if used > budget:
            raise SolverFailure(
                f"simplex exceeded its pivot budget of {budget}; "
                "the problem is likely ill-conditioned"
            )


def _basis_duals(columns: np.ndarray, basis: list[int], costs: np.ndarray) -> np.ndarray:
    b_mat = columns[:, basis]
    try:
        return np.linalg.solve(b_mat.T, costs[basis])
    except np.linalg.LinAlgError as exc:
        raise SolverFailure(f"singular basis while recovering duals: {exc}") from exc


def solve_lp(
    c,
    a_eq=None,
    b_eq=None,
    a_ub=None,
    b_ub=None,
    *,
    tol: float = 1e-8,
    max_iter: int | None = None,
) -> LpSolution:
    """Solve  min c.x  s.t.  a_eq x = b_eq,  a_ub x <= b_ub,  x >= 0.

    ``tol`` is the feasibility threshold: a phase-one optimum above it means
    infeasible.  Raises :class:`SolverFailure` if the pivot budget runs out
    or a basis turns singular; returns a status otherwise.
    """
    c = np.asarray(c, dtype=np.float64)
    if c.ndim != 1:
        raise ValueError(f"objective must be a vector, got shape {c.shape}")
    n = c.shape[0]
    a_eq = _as_matrix(a_eq, n, "a_eq")
    a_ub = _as_matrix(a_ub, n, "a_ub")
    b_eq_v = np.zeros(0) if b_eq is None else np.asarray(b_eq, dtype=np.float64).reshape(-1)
    b_ub_v = np.zeros(0) if b_ub is None else np.asarray(b_ub, dtype=np.float64).reshape(-1)
    if a_eq.shape[0] != b_eq_v.shape[0] or a_ub.shape[0] != b_ub_v.shape[0]:
        raise ValueError("constraint matrix and right-hand side row counts disagree")
    m_eq, m_ub = a_eq.shape[0], a_ub.shape[0]
    m = m_eq + m_ub
    width = n + m_ub  # structural variables plus one slack per inequality

    if m == 0:
        # No constraints: x = 0 unless some cost is negative, then unbounded.
        if np.any(c < -_PIVOT_TOL):
            return LpSolution(status=UNBOUNDED)
        zero = np.zeros(n)
        return LpSolution(
            status=OPTIMAL, x=zero, objective=0.0, slack=np.zeros(0),
            dual_eq=np.zeros(0), dual_ub=np.zeros(0),
        )

    full = np.zeros((m, width))
    full[:m_eq, :n] = a_eq
    full[m_eq:, :n] = a_ub
    full[m_eq:, n:] = np.eye(m_ub)
    rhs = np.concatenate([b_eq_v, b_ub_v])

    signs = np.where(rhs < 0.0, -1.0, 1.0)
    full = full * signs[:, None]
    rhs = rhs * signs

    budget = max_iter if max_iter is not None else 200 + 40 * (m + width)

    # Phase one: artificial variables form the starting basis.
    tableau = np.zeros((m + 1, width + m + 1))
    tableau[:m, :width] = full
    tableau[:m, width : width + m] = np.eye(m)
    tableau[:m, -1] = rhs
    tableau[-1, :width] = -full.sum(axis=0)
    tableau[-1, -1] = -rhs.sum()
    basis = list(range(width, width + m))

    status, pivots = _run_simplex(tableau, basis, width + m, budget)
    total_pivots = pivots
    if status == UNBOUNDED:  # cannot happen: phase-one objective is bounded below by 0
        raise SolverFailure("phase one reported an unbounded auxiliary problem")
    infeasibility = -tableau[-1, -1]
    if infeasibility > tol:
        phase1_cols = np.concatenate([full, np.eye(m)], axis=1)
        phase1_costs = np.concatenate([np.zeros(width), np.ones(m)])
        y = _basis_duals(phase1_cols, basis, phase1_costs)
        return LpSolution(status=INFEASIBLE, certificate=signs * y, iterations=total_pivots)

    # Pivot leftover artificial variables out; a row that offers no pivot is
    # a redundant constraint and is dropped.
    keep = np.ones(m, dtype=bool)
    for r in range(m):
        if basis[r] < width:
            continue
        row = tableau[r, :width]
        pivot_cols = np.flatnonzero(np.abs(row) > _PIVOT_TOL)
        if pivot_cols.size:
            _pivot(tableau, r, int(pivot_cols[0]))
            basis[r] = int(pivot_cols[0])
        else:
            keep[r] = False
    if not keep.all():
        rows = np.flatnonzero(keep)
        tableau = np.concatenate([tableau[rows], tableau[-1:][:]], axis=0)
        basis = [basis[r] for r in rows]
        full = full[rows]
        rhs = rhs[rows]
        signs_kept = signs[rows]
    else:
        signs_kept = signs
    m_kept = len(basis)

    # Phase two on the reduced tableau, artificial columns removed.
    costs = np.concatenate([c, np.zeros(m_ub)])
    body = tableau[:m_kept, :width]
    b_col = tableau[:m_kept, -1]
    tableau2 = np.zeros((m_kept + 1, width + 1))
    tableau2[:m_kept, :width] = body
    tableau2[:m_kept, -1] = b_col
    basic_costs = costs[basis]
    tableau2[-1, :width] = costs - basic_costs @ body
    tableau2[-1, -1] = -float(basic_costs @ b_col)

    status, pivots = _run_simplex(tableau2, basis, width, budget)
    total_pivots += pivots
    if status == UNBOUNDED:
        return LpSolution(status=UNBOUNDED, iterations=total_pivots)

    x_full = np.zeros(width)
    x_full[basis] = tableau2[:m_kept, -1]
    x_full[np.abs(x_full) < _CLEAN_TOL] = 0.0
    x = x_full[:n]
    slack = x_full[n:]
    objective = float(c @ x)

    y = _basis_duals(full, basis, costs)
    y_orig = np.zeros(m)
    y_orig[np.flatnonzero(keep)] = signs_kept * y
    return LpSolution(
        status=OPTIMAL,
        x=x,
        objective=objective,
        slack=slack,
        dual_eq=y_orig[:m_eq],
        dual_ub=y_orig[m_eq:],
        iterations=total_pivots,
    )
