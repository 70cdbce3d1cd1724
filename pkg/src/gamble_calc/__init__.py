"""Gambles under nonlinear utility.

A gamble is a finite map from states of the world to rewards.  This
package combines gambles through invertible utility transforms, checks
acceptance sets for coherence by linear programming, derives the induced
risk measures, and simulates how ensemble averages and single-trajectory
growth rates part ways under multiplicative dynamics.
"""

from .coherence import (
    DEFAULT_EPSILON,
    AcceptanceSet,
    FunctionalSearchResult,
    MembershipResult,
    PartialLossResult,
    RepresentingFunctional,
    accepts,
    avoids_partial_loss,
    cone_membership,
    evaluate,
    find_representing_functional,
    upward_closure_check,
)
from .combine import (
    CombinationResult,
    combine,
    combine_seq,
    log_additivity_check,
)
from .core import (
    Gamble,
    ProbabilityMeasure,
    StateSpace,
    expectation,
)
from .errors import (
    DomainError,
    GambleCalcError,
    ModeError,
    ParseError,
    RangeError,
    SizeError,
    SolverFailure,
    SpaceMismatch,
)
from .ergodicity import (
    GrowthSummary,
    PathOutcome,
    SimulationConfig,
    TrajectoryEnsemble,
    exhaustive_paths,
    growth_rates,
    simulate,
)
from .laws import LawResult, LawsReport, run_laws
from .portfolio import (
    PortfolioReport,
    StrategyStats,
    analyze_portfolio,
    parse_returns_csv,
)
from .risk import (
    RiskReport,
    risk_report,
    rho_exponential,
    rho_log,
    rho_power,
)
from .utility import (
    UtilitySpec,
    WellBehavedReport,
    check_well_behaved,
    discounted_utility,
    exponential_utility,
    format_utility,
    identity_utility,
    log1p_utility,
    parse_utility,
    power_utility,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "StateSpace",
    "Gamble",
    "ProbabilityMeasure",
    "expectation",
    "UtilitySpec",
    "identity_utility",
    "log1p_utility",
    "power_utility",
    "exponential_utility",
    "discounted_utility",
    "parse_utility",
    "format_utility",
    "check_well_behaved",
    "WellBehavedReport",
    "CombinationResult",
    "combine",
    "combine_seq",
    "log_additivity_check",
    "AcceptanceSet",
    "RepresentingFunctional",
    "MembershipResult",
    "PartialLossResult",
    "FunctionalSearchResult",
    "cone_membership",
    "avoids_partial_loss",
    "find_representing_functional",
    "upward_closure_check",
    "evaluate",
    "accepts",
    "DEFAULT_EPSILON",
    "RiskReport",
    "risk_report",
    "rho_power",
    "rho_exponential",
    "rho_log",
    "SimulationConfig",
    "TrajectoryEnsemble",
    "GrowthSummary",
    "PathOutcome",
    "simulate",
    "exhaustive_paths",
    "growth_rates",
    "PortfolioReport",
    "StrategyStats",
    "analyze_portfolio",
    "parse_returns_csv",
    "LawResult",
    "LawsReport",
    "run_laws",
    "GambleCalcError",
    "DomainError",
    "RangeError",
    "SpaceMismatch",
    "SizeError",
    "ModeError",
    "ParseError",
    "SolverFailure",
]
