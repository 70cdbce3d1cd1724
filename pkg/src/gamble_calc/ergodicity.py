"""Ensemble simulation against time-average growth.

Repeating a gamble multiplicatively means wealth after n periods is
w_n = w_0 * (1 + f(s_1)) * ... * (1 + f(s_n)) with states drawn
independently.  The ensemble average E[w_n] grows like (1 + E[f])**n while
almost every single trajectory grows like exp(n * E[log(1 + f)]); the gap
between those two exponents (nonnegative, by concavity of the logarithm)
is what the simulation here is built to exhibit.

Reproducibility contract: trajectory k of a run with seed s draws its
period-i state from the i-th uniform variate of a counter-based generator
keyed by the pair (s mod 2**64, k).  Streams for distinct trajectories are
statistically independent, any single trajectory can be regenerated
without producing the others, and results are identical across runs and
platforms for a given (seed, trajectories, periods) triple.  States are
sampled by inverse CDF over the space's label order.

Wealth is accumulated in log space (sums of log1p terms, exponentiated
once), so long products cannot overflow or lose positivity; the exhaustive
enumerator, by contrast, multiplies factors directly because its point is
exact small-depth path arithmetic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .core import Gamble, ProbabilityMeasure, expectation, _require_same_space
from .errors import DomainError, ModeError, SizeError

__all__ = [
    "MULTIPLICATIVE",
    "ADDITIVE",
    "SimulationConfig",
    "TrajectoryEnsemble",
    "PathOutcome",
    "GrowthSummary",
    "simulate",
    "exhaustive_paths",
    "growth_rates",
    "EXHAUSTIVE_CAP",
]

MULTIPLICATIVE = "multiplicative"
ADDITIVE = "additive"
EXHAUSTIVE_CAP = 1_000_000


def _check_multiplicative_domain(f: Gamble) -> None:
    if np.any(f.rewards <= -1.0):
        i = int(np.flatnonzero(f.rewards <= -1.0)[0])
        raise DomainError(
            f"multiplicative dynamics need returns above -1 to keep wealth "
            f"positive; outcome {f.space.labels[i]!r} has {float(f.rewards[i])!r}"
        )


@dataclass(frozen=True)
class SimulationConfig:
    """Inputs of one simulation run.

    Rewards are per-period return fractions.  ``mode`` selects how they
    accumulate: ``multiplicative`` compounds them onto wealth,
    ``additive`` sums them.
    """

    gamble: Gamble
    measure: ProbabilityMeasure
    periods: int
    trajectories: int
    initial_wealth: float = 1.0
    seed: int = 0
    mode: str = MULTIPLICATIVE

    def __post_init__(self) -> None:
        _require_same_space(self.gamble.space, self.measure.space, "simulation")
        if self.mode not in (MULTIPLICATIVE, ADDITIVE):
            raise ValueError(f"mode must be {MULTIPLICATIVE!r} or {ADDITIVE!r}, got {self.mode!r}")
        if self.periods < 1:
            raise ValueError(f"periods must be at least 1, got {self.periods}")
        if self.trajectories < 1:
            raise ValueError(f"trajectories must be at least 1, got {self.trajectories}")
        if not self.initial_wealth > 0.0:
            raise ValueError(f"initial wealth must be positive, got {self.initial_wealth!r}")
        if not isinstance(self.seed, int):
            raise ValueError(f"seed must be an integer, got {self.seed!r}")
        if self.mode == MULTIPLICATIVE:
            _check_multiplicative_domain(self.gamble)


@dataclass(frozen=True)
class TrajectoryEnsemble:
    """Simulated wealth paths plus the reference curves drawn against them.

    ``wealth_paths`` has shape (trajectories, periods + 1) with column 0 at
    the initial wealth.  ``ensemble_mean_path`` is the exact expectation
    curve computed analytically, not an average of draws;
    ``empirical_mean_path`` is that average, for comparison.  The growth
    fields are populated in multiplicative mode only.
    """

    config: SimulationConfig
    wealth_paths: np.ndarray
    ensemble_mean_path: np.ndarray
    empirical_mean_path: np.ndarray
    median_path: np.ndarray
    geometric_growth_path: np.ndarray | None
    time_average_estimates: np.ndarray | None
    theoretical_ensemble_growth: float | None
    theoretical_time_growth: float | None


@dataclass(frozen=True)
class PathOutcome:
    """One exhaustively enumerated state sequence and its wealth path."""

    states: tuple[str, ...]
    wealth_path: tuple[float, ...]
    probability: float

    @property
    def final_wealth(self) -> float:
        return self.wealth_path[-1]


@dataclass(frozen=True)
class GrowthSummary:
    """Growth-rate estimates from a multiplicative ensemble.

    ``divergence`` is the theoretical ensemble rate minus the theoretical
    time-average rate; it is nonnegative and vanishes only for constant
    gambles.
    """

    trajectories: int
    periods: int
    time_average_mean: float
    time_average_std: float
    time_average_stderr: float
    theoretical_time_growth: float
    theoretical_ensemble_growth: float
    divergence: float


def _state_indices(seed: int, trajectories: int, periods: int, cum: np.ndarray) -> np.ndarray:
    key0 = seed & 0xFFFFFFFFFFFFFFFF
    idx = np.empty((trajectories, periods), dtype=np.intp)
    for k in range(trajectories):
        rng = np.random.Generator(np.random.Philox(key=[key0, k]))
        idx[k] = np.searchsorted(cum, rng.random(periods), side="right")
    return idx


def simulate(config: SimulationConfig) -> TrajectoryEnsemble:
    """Run the configured ensemble.

    Deterministic in the config: same seed, same paths, on any platform.
    """
    f, p = config.gamble, config.measure
    n, big_k = config.periods, config.trajectories
    w0 = config.initial_wealth

    cum = np.cumsum(p.weights)
    cum[-1] = 1.0  # guard the float drift of the running sum; draws are < 1
    idx = _state_indices(config.seed, big_k, n, cum)

    steps = np.arange(n + 1)
    mean_return = expectation(f, p)
    if config.mode == MULTIPLICATIVE:
        log_steps = np.log1p(f.rewards)[idx]
        log_paths = np.concatenate(
            [np.zeros((big_k, 1)), np.cumsum(log_steps, axis=1)], axis=1
        ) + math.log(w0)
        paths = np.exp(log_paths)
        time_avg = (log_paths[:, -1] - math.log(w0)) / n
        ensemble_curve = w0 * np.power(1.0 + mean_return, steps)
        time_growth = float(p.weights @ np.log1p(f.rewards))
        geometric_curve = w0 * np.exp(steps * time_growth)
        ensemble_growth = float(np.log1p(mean_return))
    else:
        paths = w0 + np.concatenate(
            [np.zeros((big_k, 1)), np.cumsum(f.rewards[idx], axis=1)], axis=1
        )
        time_avg = None
        ensemble_curve = w0 + mean_return * steps
        geometric_curve = None
        time_growth = None
        ensemble_growth = None

    for arr in (paths, ensemble_curve):
        arr.setflags(write=False)
    return TrajectoryEnsemble(
        config=config,
        wealth_paths=paths,
        ensemble_mean_path=ensemble_curve,
        empirical_mean_path=paths.mean(axis=0),
        median_path=np.median(paths, axis=0),
        geometric_growth_path=geometric_curve,
        time_average_estimates=time_avg,
        theoretical_ensemble_growth=ensemble_growth,
        theoretical_time_growth=time_growth,
    )


def exhaustive_paths(
    gamble: Gamble,
    measure: ProbabilityMeasure,
    periods: int,
    initial_wealth: float = 1.0,
    mode: str = MULTIPLICATIVE,
) -> list[PathOutcome]:
    """Enumerate every state sequence of the given depth with its wealth path.

    Paths are produced in lexicographic order of state indices, and their
    probabilities sum to 1 up to float roundoff.  Wealth along each path is
    accumulated by direct sequential arithmetic (products of 1 + r factors
    in multiplicative mode), so shallow enumerations are exact.

    Raises:
        SizeError: when the number of sequences, states**periods, would
            exceed 1e6.
    """
    _require_same_space(gamble.space, measure.space, "exhaustive enumeration")
    if mode not in (MULTIPLICATIVE, ADDITIVE):
        raise ValueError(f"mode must be {MULTIPLICATIVE!r} or {ADDITIVE!r}, got {mode!r}")
    if periods < 1:
        raise ValueError(f"periods must be at least 1, got {periods}")
    if not initial_wealth > 0.0:
        raise ValueError(f"initial wealth must be positive, got {initial_wealth!r}")
    if mode == MULTIPLICATIVE:
        _check_multiplicative_domain(gamble)
    m = len(gamble.space)
    total = m**periods
    if total > EXHAUSTIVE_CAP:
        raise SizeError(
            f"exhaustive enumeration of {m}**{periods} = {total} paths exceeds "
            f"the cap of {EXHAUSTIVE_CAP}; use simulate() instead"
        )

    labels = gamble.space.labels
    rewards = gamble.rewards
    weights = measure.weights
    outcomes: list[PathOutcome] = []
    for combo in itertools.product(range(m), repeat=periods):
        wealth = initial_wealth
        path = [wealth]
        prob = 1.0
        for i in combo:
            if mode == MULTIPLICATIVE:
                wealth = wealth * (1.0 + rewards[i])
            else:
                wealth = wealth + rewards[i]
            path.append(wealth)
            prob *= weights[i]
        outcomes.append(
            PathOutcome(
                states=tuple(labels[i] for i in combo),
                wealth_path=tuple(float(w) for w in path),
                probability=float(prob),
            )
        )
    return outcomes


def growth_rates(ensemble: TrajectoryEnsemble) -> GrowthSummary:
    """Summarize per-trajectory growth against the two theoretical rates.

    Raises:
        ModeError: for additive ensembles, where per-period log growth is
            undefined.
    """
    if ensemble.config.mode != MULTIPLICATIVE:
        raise ModeError(
            "growth rates compare exponential trends and are defined for "
            "multiplicative dynamics only"
        )
    estimates = ensemble.time_average_estimates
    big_k = ensemble.config.trajectories
    std = float(np.std(estimates, ddof=1)) if big_k > 1 else 0.0
    return GrowthSummary(
        trajectories=big_k,
        periods=ensemble.config.periods,
        time_average_mean=float(np.mean(estimates)),
        time_average_std=std,
        time_average_stderr=std / math.sqrt(big_k),
        theoretical_time_growth=ensemble.theoretical_time_growth,
        theoretical_ensemble_growth=ensemble.theoretical_ensemble_growth,
        divergence=ensemble.theoretical_ensemble_growth - ensemble.theoretical_time_growth,
    )
