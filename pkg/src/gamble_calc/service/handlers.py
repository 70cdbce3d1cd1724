"""Handler functions shared by the HTTP routes and the CLI.

Each handler maps a request model to a response model using the core
package, with no transport concerns; the FastAPI layer adds routing and
error serialization on top, and the CLI calls these directly so that a
local run and a server round trip produce the same payloads.
"""

from __future__ import annotations

from .. import coherence, ergodicity, laws, portfolio, risk
from ..combine import combine_seq
from ..core import ProbabilityMeasure
from ..utility import format_utility, parse_utility
from . import schemas

__all__ = [
    "run_combine",
    "run_check",
    "run_risk",
    "run_risk_batch",
    "run_simulate",
    "run_portfolio",
    "run_laws",
]


def _labeled(labels, values) -> dict[str, float]:
    return {label: float(v) for label, v in zip(labels, values)}


def run_combine(req: schemas.CombineRequest) -> schemas.CombineResponse:
    u = parse_utility(req.utility)
    gambles = [g.to_core() for g in req.gambles]
    result = combine_seq(u, gambles)
    labels = result.combined.space.labels
    return schemas.CombineResponse(
        utility=format_utility(u),
        combined=schemas.GambleModel.from_core(result.combined),
        per_state_u_values=_labeled(labels, result.transformed_total),
        per_input_u_values=[_labeled(labels, vec) for vec in result.transformed_inputs],
        residual=result.residual,
    )


def run_check(req: schemas.CheckRequest) -> schemas.CheckResponse:
    u = parse_utility(req.utility)
    d = req.acceptance_set.to_core(u)
    loss = coherence.avoids_partial_loss(d, epsilon=req.epsilon)
    search = coherence.find_representing_functional(d, epsilon=req.epsilon)
    membership = None
    if req.gamble is not None:
        verdict = coherence.cone_membership(d, req.gamble.to_core())
        labels = d.space.labels
        membership = schemas.MembershipModel(
            accepted=verdict.accepted,
            coefficients=None if verdict.coefficients is None else [float(x) for x in verdict.coefficients],
            slack=None if verdict.slack is None else _labeled(labels, verdict.slack),
            certificate=None if verdict.certificate is None else _labeled(labels, verdict.certificate),
            margin=verdict.margin,
        )
    return schemas.CheckResponse(
        utility=format_utility(u),
        generators=len(d),
        avoids_partial_loss=loss.avoids,
        worst_mixture_value=loss.worst_value,
        loss_witness=None if loss.witness is None else [float(x) for x in loss.witness],
        functional=schemas.FunctionalModel.from_core(search.feasible, search.functional, search.margin),
        coherent=loss.avoids and search.feasible,
        membership=membership,
    )


def _resolve_measure(
    gamble_model: schemas.GambleModel,
    measure_model: schemas.MeasureModel | None,
    set_model: schemas.AcceptanceSetModel | None,
    utility,
) -> tuple[ProbabilityMeasure, str]:
    """Measure to evaluate under: the explicit one, or the max-margin
    representing functional of the given (possibly empty) acceptance set."""
    if measure_model is not None:
        return measure_model.to_core(), "given"
    if set_model is None:
        f = gamble_model.to_core()
        return ProbabilityMeasure.uniform(f.space), "uniform"
    d = set_model.to_core(utility)
    search = coherence.find_representing_functional(d)
    if not search.feasible:
        raise ValueError(
            "no measure given and the acceptance set admits no representing "
            "functional; provide a measure explicitly"
        )
    return search.functional.as_measure(), "representing-functional"


def run_risk(req: schemas.RiskRequest) -> schemas.RiskResponse:
    u = parse_utility(req.utility)
    f = req.gamble.to_core()
    p, source = _resolve_measure(req.gamble, req.measure, req.acceptance_set, u)
    report = risk.risk_report(f, p, u, gamble_id=req.gamble_id)
    return schemas.RiskResponse.from_core(report, source)


def run_risk_batch(req: schemas.RiskBatchRequest) -> schemas.RiskBatchResponse:
    u = parse_utility(req.utility)
    ids = req.gamble_ids or [f"gamble-{i + 1}" for i in range(len(req.gambles))]
    if len(ids) != len(req.gambles):
        raise ValueError(
            f"got {len(ids)} gamble ids for {len(req.gambles)} gambles"
        )
    reports = []
    for gamble_model, gamble_id in zip(req.gambles, ids):
        p, source = _resolve_measure(gamble_model, req.measure, req.acceptance_set, u)
        report = risk.risk_report(gamble_model.to_core(), p, u, gamble_id=gamble_id)
        reports.append(schemas.RiskResponse.from_core(report, source))
    return schemas.RiskBatchResponse(
        reports=reports, all_acceptable=all(r.acceptable for r in reports)
    )


def run_simulate(req: schemas.SimulateRequest) -> schemas.SimulateResponse:
    config = ergodicity.SimulationConfig(
        gamble=req.gamble.to_core(),
        measure=req.measure.to_core(),
        periods=req.periods,
        trajectories=req.trajectories,
        initial_wealth=req.initial_wealth,
        seed=req.seed,
        mode=req.mode,
    )
    ens = ergodicity.simulate(config)
    growth = None
    if config.mode == ergodicity.MULTIPLICATIVE:
        summary = ergodicity.growth_rates(ens)
        growth = schemas.GrowthModel(
            time_average_mean=summary.time_average_mean,
            time_average_std=summary.time_average_std,
            time_average_stderr=summary.time_average_stderr,
            theoretical_time_growth=summary.theoretical_time_growth,
            theoretical_ensemble_growth=summary.theoretical_ensemble_growth,
            divergence=summary.divergence,
        )
    return schemas.SimulateResponse(
        mode=config.mode,
        periods=config.periods,
        trajectories=config.trajectories,
        seed=config.seed,
        initial_wealth=config.initial_wealth,
        ensemble_mean_path=[float(x) for x in ens.ensemble_mean_path],
        empirical_mean_path=[float(x) for x in ens.empirical_mean_path],
        median_path=[float(x) for x in ens.median_path],
        geometric_growth_path=(
            None
            if ens.geometric_growth_path is None
            else [float(x) for x in ens.geometric_growth_path]
        ),
        growth=growth,
        wealth_paths=(
            [[float(x) for x in row] for row in ens.wealth_paths]
            if req.include_paths
            else None
        ),
    )


def run_portfolio(req: schemas.PortfolioRequest) -> schemas.PortfolioResponse:
    u = parse_utility(req.utility)
    report = portfolio.analyze_portfolio(req.returns, u)
    return schemas.PortfolioResponse(
        utility=format_utility(u),
        strategies=[
            schemas.StrategyModel(
                name=s.name,
                periods=s.periods,
                arithmetic_mean=s.arithmetic_mean,
                mean_log_return=s.mean_log_return,
                compound_factor=s.compound_factor,
                utility_mean=s.utility_mean,
                premium=s.premium,
                acceptable=s.acceptable,
            )
            for s in report.strategies
        ],
        ranking_arithmetic=list(report.ranking_arithmetic),
        ranking_log=list(report.ranking_log),
        ranking_compound=list(report.ranking_compound),
        rankings_disagree=report.rankings_disagree,
    )


def run_laws(req: schemas.LawsRequest) -> schemas.LawsResponse:
    u = parse_utility(req.utility)
    report = laws.run_laws(
        u, trials=req.trials, seed=req.seed, states=req.states, threshold=req.threshold
    )
    return schemas.LawsResponse(
        utility=format_utility(u),
        trials=report.trials,
        seed=report.seed,
        states=report.states,
        box_low=report.box_low,
        box_high=report.box_high,
        results=[
            schemas.LawResultModel(
                name=r.name,
                trials=r.trials,
                max_residual=r.max_residual,
                threshold=r.threshold,
                passed=r.passed,
            )
            for r in report.results
        ],
        all_passed=report.all_passed,
    )
