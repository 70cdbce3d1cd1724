"""Finite state spaces, gambles, and probability measures.

A gamble is a real reward vector indexed by the outcomes of a finite state
space; rewards are understood as per-period return fractions (0.25 means a
25% gain, -0.10 a 10% loss).  All vector payloads are float64 numpy arrays
frozen against mutation, so values can be shared freely between results.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, SpaceMismatch

__all__ = [
    "StateSpace",
    "Gamble",
    "ProbabilityMeasure",
    "pointwise_map",
    "expectation",
    "dominates",
]

_WEIGHT_SUM_TOL = 1e-12


def _frozen_vector(values: Iterable[float], n: int, what: str) -> np.ndarray:
    arr = np.asarray(tuple(values), dtype=np.float64)
    if arr.ndim != 1 or arr.shape[0] != n:
        raise ValueError(f"{what} must be a flat vector of length {n}, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        bad = int(np.flatnonzero(~np.isfinite(arr))[0])
        raise ValueError(f"{what} contains a non-finite entry at position {bad}: {arr[bad]!r}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class StateSpace:
    """An ordered finite set of outcome labels.

    The label order is significant: it fixes the coordinate order of every
    reward and weight vector built over the space, and the order in which
    simulated draws index outcomes.
    """

    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        labels = tuple(self.labels)
        if not labels:
            raise ValueError("a state space needs at least one outcome")
        if any(not isinstance(lbl, str) or not lbl for lbl in labels):
            raise ValueError("outcome labels must be non-empty strings")
        if len(set(labels)) != len(labels):
            raise ValueError("outcome labels must be distinct")
        object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown outcome {label!r}; space has {list(self.labels)}") from None


def _require_same_space(a: StateSpace, b: StateSpace, what: str) -> None:
    if a != b:
        raise SpaceMismatch(
            f"{what} requires matching state spaces, got {list(a.labels)} vs {list(b.labels)}"
        )


@dataclass(frozen=True)
class Gamble:
    """A reward vector over a state space.

    Supports vector-space arithmetic (gamble + gamble, scalar * gamble,
    negation) over a shared space; anything else raises.  Instances are
    immutable and hashable, with value equality.
    """

    space: StateSpace
    rewards: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "rewards", _frozen_vector(self.rewards, len(self.space), "rewards")
        )

    @classmethod
    def from_mapping(cls, space: StateSpace, rewards: Mapping[str, float]) -> Gamble:
        missing = [lbl for lbl in space.labels if lbl not in rewards]
        extra = [key for key in rewards if key not in space.labels]
        if missing or extra:
            raise ValueError(
                f"reward mapping does not match the space: missing {missing}, unexpected {extra}"
            )
        return cls(space, np.array([float(rewards[lbl]) for lbl in space.labels]))

    @classmethod
    def constant(cls, space: StateSpace, value: float) -> Gamble:
        return cls(space, np.full(len(space), float(value)))

    def as_mapping(self) -> dict[str, float]:
        return {lbl: float(x) for lbl, x in zip(self.space.labels, self.rewards)}

    def reward(self, label: str) -> float:
        return float(self.rewards[self.space.index(label)])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Gamble):
            return NotImplemented
        return self.space == other.space and np.array_equal(self.rewards, other.rewards)

    def __hash__(self) -> int:
        return hash((self.space.labels, self.rewards.tobytes()))

    def __add__(self, other: Gamble) -> Gamble:
        if not isinstance(other, Gamble):
            return NotImplemented
        _require_same_space(self.space, other.space, "gamble addition")
        return Gamble(self.space, self.rewards + other.rewards)

    def __sub__(self, other: Gamble) -> Gamble:
        if not isinstance(other, Gamble):
            return NotImplemented
        _require_same_space(self.space, other.space, "gamble subtraction")
        return Gamble(self.space, self.rewards - other.rewards)

    def __mul__(self, scalar: float) -> Gamble:
        if not isinstance(scalar, (int, float, np.floating, np.integer)):
            return NotImplemented
        return Gamble(self.space, float(scalar) * self.rewards)

    __rmul__ = __mul__

    def __neg__(self) -> Gamble:
        return Gamble(self.space, -self.rewards)

    def dominates(self, other: Gamble) -> bool:
        return dominates(self, other)


@dataclass(frozen=True)
class ProbabilityMeasure:
    """Non-negative outcome weights summing to one over a state space."""

    space: StateSpace
    weights: np.ndarray

    def __post_init__(self) -> None:
        w = _frozen_vector(self.weights, len(self.space), "weights")
        if np.any(w < 0.0):
            bad = int(np.flatnonzero(w < 0.0)[0])
            raise ValueError(
                f"weights must be non-negative, got {w[bad]!r} "
                f"for outcome {self.space.labels[bad]!r}"
            )
        total = float(np.sum(w))
        if abs(total - 1.0) > _WEIGHT_SUM_TOL:
            raise ValueError(f"weights must sum to 1 within {_WEIGHT_SUM_TOL}, got {total!r}")
        object.__setattr__(self, "weights", w)

    @classmethod
    def from_mapping(cls, space: StateSpace, weights: Mapping[str, float]) -> ProbabilityMeasure:
        missing = [lbl for lbl in space.labels if lbl not in weights]
        extra = [key for key in weights if key not in space.labels]
        if missing or extra:
            raise ValueError(
                f"weight mapping does not match the space: missing {missing}, unexpected {extra}"
            )
        return cls(space, np.array([float(weights[lbl]) for lbl in space.labels]))

    @classmethod
    def uniform(cls, space: StateSpace) -> ProbabilityMeasure:
        n = len(space)
        return cls(space, np.full(n, 1.0 / n))

    def as_mapping(self) -> dict[str, float]:
        return {lbl: float(w) for lbl, w in zip(self.space.labels, self.weights)}

    def weight(self, label: str) -> float:
        return float(self.weights[self.space.index(label)])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ProbabilityMeasure):
            return NotImplemented
        return self.space == other.space and np.array_equal(self.weights, other.weights)

    def __hash__(self) -> int:
        return hash((self.space.labels, self.weights.tobytes()))


def pointwise_map(f: Gamble, transform: Callable[[float], float]) -> Gamble:
    """Apply a scalar transform outcome by outcome.

    Raises:
        DomainError: if the transform raises or produces a non-finite value
            for some outcome; the message names the outcome and the reward.
    """
    out = np.empty(len(f.space))
    for i, (label, x) in enumerate(zip(f.space.labels, f.rewards)):
        try:
            y = float(transform(float(x)))
        except (ValueError, ArithmeticError, OverflowError) as exc:
            raise DomainError(
                f"transform failed at outcome {label!r} (reward {float(x)!r}): {exc}"
            ) from exc
        if not np.isfinite(y):
            raise DomainError(
                f"transform produced non-finite value {y!r} at outcome {label!r} "
                f"(reward {float(x)!r})"
            )
        out[i] = y
    return Gamble(f.space, out)


def expectation(f: Gamble, p: ProbabilityMeasure) -> float:
    """Expected reward of ``f`` under ``p`` (weighted dot product)."""
    _require_same_space(f.space, p.space, "expectation")
    return float(np.dot(p.weights, f.rewards))


def dominates(f: Gamble, g: Gamble) -> bool:
    """True when ``f`` pays at least as much as ``g`` in every state."""
    _require_same_space(f.space, g.space, "domination check")
    return bool(np.all(f.rewards >= g.rewards))
