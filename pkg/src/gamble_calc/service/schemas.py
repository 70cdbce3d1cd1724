"""Request and response models for the HTTP service and CLI.

Request models forbid unknown fields, matching the config-file discipline:
a misspelled field is an error, never a silent default.  Utility transforms
travel as their specifier strings ("log1p", "power:0.5", ...), the same
grammar the CLI flags use.
"""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field

from ..coherence import AcceptanceSet, RepresentingFunctional
from ..core import Gamble, ProbabilityMeasure, StateSpace
from ..risk import RiskReport
from ..utility import UtilitySpec, format_utility

import numpy as np


class _Request(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


class GambleModel(_Request):
    states: list[str]
    rewards: dict[str, float]

    @classmethod
    def from_core(cls, f: Gamble) -> "GambleModel":
        return cls(states=list(f.space.labels), rewards=f.as_mapping())

    def to_core(self) -> Gamble:
        return Gamble.from_mapping(StateSpace(tuple(self.states)), self.rewards)


class MeasureModel(_Request):
    states: list[str]
    weights: dict[str, float]

    @classmethod
    def from_core(cls, p: ProbabilityMeasure) -> "MeasureModel":
        return cls(states=list(p.space.labels), weights=p.as_mapping())

    def to_core(self) -> ProbabilityMeasure:
        return ProbabilityMeasure.from_mapping(StateSpace(tuple(self.states)), self.weights)


class AcceptanceSetModel(_Request):
    states: list[str]
    generators: list[list[float]]

    def to_core(self, utility: UtilitySpec) -> AcceptanceSet:
        space = StateSpace(tuple(self.states))
        gambles = tuple(Gamble(space, np.asarray(vec, dtype=np.float64)) for vec in self.generators)
        return AcceptanceSet(space, gambles, utility)


class CombineRequest(_Request):
    utility: str = "log1p"
    gambles: list[GambleModel] = Field(min_length=1)


class CombineResponse(BaseModel):
    utility: str
    combined: GambleModel
    per_state_u_values: dict[str, float]
    per_input_u_values: list[dict[str, float]]
    residual: float


class CheckRequest(_Request):
    utility: str = "identity"
    acceptance_set: AcceptanceSetModel = Field(alias="set")
    gamble: GambleModel | None = None
    epsilon: float = Field(default=1e-9, ge=0.0)


class MembershipModel(BaseModel):
    accepted: bool
    coefficients: list[float] | None
    slack: dict[str, float] | None
    certificate: dict[str, float] | None
    margin: float


class FunctionalModel(BaseModel):
    feasible: bool
    weights: dict[str, float] | None
    margin: float | None

    @classmethod
    def from_core(
        cls, feasible: bool, functional: RepresentingFunctional | None, margin: float | None
    ) -> "FunctionalModel":
        weights = None
        if functional is not None:
            weights = {
                label: float(w)
                for label, w in zip(functional.space.labels, functional.weights)
            }
        return cls(feasible=feasible, weights=weights, margin=margin)


class CheckResponse(BaseModel):
    utility: str
    generators: int
    avoids_partial_loss: bool
    worst_mixture_value: float | None
    loss_witness: list[float] | None
    functional: FunctionalModel
    coherent: bool
    membership: MembershipModel | None


class RiskRequest(_Request):
    utility: str = "log1p"
    gamble: GambleModel
    gamble_id: str = "gamble"
    measure: MeasureModel | None = None
    acceptance_set: AcceptanceSetModel | None = Field(default=None, alias="set")


class RiskResponse(BaseModel):
    gamble_id: str
    utility: str
    rho: float
    acceptable: bool
    arithmetic_expectation: float
    expected_log_return: float | None
    relative_risk_aversion: float | None
    absolute_risk_aversion: float | None
    measure: MeasureModel
    measure_source: str

    @classmethod
    def from_core(cls, report: RiskReport, source: str) -> "RiskResponse":
        return cls(
            gamble_id=report.gamble_id,
            utility=format_utility(report.utility),
            rho=report.rho,
            acceptable=report.acceptable,
            arithmetic_expectation=report.arithmetic_expectation,
            expected_log_return=report.expected_log_return,
            relative_risk_aversion=report.relative_risk_aversion,
            absolute_risk_aversion=report.absolute_risk_aversion,
            measure=MeasureModel.from_core(report.measure),
            measure_source=source,
        )


class RiskBatchRequest(_Request):
    utility: str = "log1p"
    gambles: list[GambleModel] = Field(min_length=1)
    gamble_ids: list[str] | None = None
    measure: MeasureModel | None = None
    acceptance_set: AcceptanceSetModel | None = Field(default=None, alias="set")


class RiskBatchResponse(BaseModel):
    reports: list[RiskResponse]
    all_acceptable: bool


class SimulateRequest(_Request):
    gamble: GambleModel
    measure: MeasureModel
    periods: int = Field(default=30, ge=1)
    trajectories: int = Field(default=1000, ge=1)
    initial_wealth: float = Field(default=1.0, gt=0.0)
    seed: int = 0
    mode: str = "multiplicative"
    include_paths: bool = False


class GrowthModel(BaseModel):
    time_average_mean: float
    time_average_std: float
    time_average_stderr: float
    theoretical_time_growth: float
    theoretical_ensemble_growth: float
    divergence: float


class SimulateResponse(BaseModel):
    mode: str
    periods: int
    trajectories: int
    seed: int
    initial_wealth: float
    ensemble_mean_path: list[float]
    empirical_mean_path: list[float]
    median_path: list[float]
    geometric_growth_path: list[float] | None
    growth: GrowthModel | None
    wealth_paths: list[list[float]] | None


class PortfolioRequest(_Request):
    utility: str = "log1p"
    returns: dict[str, list[float]]


class StrategyModel(BaseModel):
    name: str
    periods: int
    arithmetic_mean: float
    mean_log_return: float
    compound_factor: float
    utility_mean: float
    premium: float
    acceptable: bool


class PortfolioResponse(BaseModel):
    utility: str
    strategies: list[StrategyModel]
    ranking_arithmetic: list[str]
    ranking_log: list[str]
    ranking_compound: list[str]
    rankings_disagree: bool


class LawsRequest(_Request):
    utility: str = "log1p"
    trials: int = Field(default=10_000, ge=1)
    seed: int = 0
    states: int = Field(default=3, ge=1)
    threshold: float = Field(default=1e-9, gt=0.0)


class LawResultModel(BaseModel):
    name: str
    trials: int
    max_residual: float
    threshold: float
    passed: bool


class LawsResponse(BaseModel):
    utility: str
    trials: int
    seed: int
    states: int
    box_low: float
    box_high: float
    results: list[LawResultModel]
    all_passed: bool


class ErrorDetail(BaseModel):
    type: str
    message: str


class ErrorResponse(BaseModel):
    error: ErrorDetail
