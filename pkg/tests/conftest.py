"""Shared fixtures and independent cross-check helpers.

scipy is used here as an oracle for the internal LP solver; the package
itself never imports it.
"""

from __future__ import annotations

import numpy as np
import pytest

from gamble_calc import Gamble, ProbabilityMeasure, StateSpace


@pytest.fixture
def coin_space() -> StateSpace:
    return StateSpace(("up", "down"))


@pytest.fixture
def coin_gamble(coin_space) -> Gamble:
    # +50% or -40%, the recurring two-outcome example
    return Gamble(coin_space, np.array([0.5, -0.4]))


@pytest.fixture
def coin_measure(coin_space) -> ProbabilityMeasure:
    return ProbabilityMeasure.uniform(coin_space)


@pytest.fixture
def three_space() -> StateSpace:
    return StateSpace(("a", "b", "c"))


def linprog_oracle(c, a_ub=None, b_ub=None, a_eq=None, b_eq=None):
    """Reference LP solution from scipy (HiGHS), x >= 0 assumed."""
    from scipy.optimize import linprog

    n = len(c)
    # presolve off: with it on, HiGHS reports "primal infeasible or
    # unbounded" instances as plain infeasible, masking the distinction
    res = linprog(
        c,
        A_ub=a_ub,
        b_ub=b_ub,
        A_eq=a_eq,
        b_eq=b_eq,
        bounds=[(0, None)] * n,
        method="highs",
        options={"presolve": False},
    )
    return res


def random_gamble(rng: np.Generator, space: StateSpace, low=-0.9, high=10.0) -> Gamble:
    return Gamble(space, rng.uniform(low, high, size=len(space)))


def random_simplex_point(rng, m: int) -> np.ndarray:
    w = rng.exponential(size=m)
    return w / w.sum()
