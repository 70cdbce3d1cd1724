"""Historical return series compared under arithmetic and growth readings.

Input is a table of per-period return fractions, one column per strategy.
Periods are weighted uniformly (each historical period counts once), and
each strategy is summarized three ways: arithmetic mean return, mean log
growth, and the compound factor actually realized over the record.  The
point of reporting all three is that their rankings need not agree; a
volatile series routinely wins on arithmetic mean while losing compound
wealth, and the report makes that visible instead of collapsing to one
number.
"""

from __future__ import annotations

import csv
import io
from collections.abc import Mapping, Sequence
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParseError
from .utility import UtilitySpec, forward, format_utility, in_domain, log1p_utility

__all__ = ["StrategyStats", "PortfolioReport", "analyze_portfolio", "parse_returns_csv"]


@dataclass(frozen=True)
class StrategyStats:
    """Summary of one return series.

    ``mean_log_return`` is the time-average growth rate of the record;
    ``compound_factor`` equals the product of (1 + r) over it, computed
    directly.  ``utility_mean`` is the mean transformed return under the
    report's chosen transform, and ``premium`` its negation, so acceptable
    means the strategy grew (in transformed terms) on average.
    """

    name: str
    periods: int
    arithmetic_mean: float
    mean_log_return: float
    compound_factor: float
    utility_mean: float
    premium: float
    acceptable: bool


@dataclass(frozen=True)
class PortfolioReport:
    """Per-strategy summaries plus the three induced rankings.

    Rankings list strategy names best first.  ``rankings_disagree`` flags
    records where the arithmetic ordering differs from the growth
    (log/compound) ordering, the situation the report exists to surface.
    """

    utility: UtilitySpec
    strategies: tuple[StrategyStats, ...]
    ranking_arithmetic: tuple[str, ...]
    ranking_log: tuple[str, ...]
    ranking_compound: tuple[str, ...]
    rankings_disagree: bool


def parse_returns_csv(text: str) -> dict[str, list[float]]:
    """Parse a strategy-per-column CSV of return fractions.

    The header row names the strategies; every data row needs one numeric
    entry per strategy.  Errors carry the 1-based row and the column name.
    """
    reader = csv.reader(io.StringIO(text))
    rows = [row for row in reader if any(cell.strip() for cell in row)]
    if not rows:
        raise ParseError("return table is empty")
    header = [cell.strip() for cell in rows[0]]
    if any(not name for name in header):
        raise ParseError("header row has an unnamed column")
    if len(set(header)) != len(header):
        raise ParseError(f"duplicate strategy names in header: {header}")
    table: dict[str, list[float]] = {name: [] for name in header}
    for row_no, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise ParseError(
                f"row {row_no} has {len(row)} cells, expected {len(header)}"
            )
        for name, cell in zip(header, row):
            try:
                table[name].append(float(cell.strip()))
            except ValueError:
                raise ParseError(
                    f"row {row_no}, column {name!r}: cannot read {cell.strip()!r} "
                    "as a number"
                ) from None
    if not table[header[0]]:
        raise ParseError("return table has a header but no data rows")
    return table


def analyze_portfolio(
    returns: Mapping[str, Sequence[float]],
    utility: UtilitySpec | None = None,
) -> PortfolioReport:
    """Summarize and rank return series.

    Defaults to the log1p transform, the growth reading.  All series must
    have the same length (the same historical record) and, when a
    log-based transform is in play, returns must stay above -1.
    """
    u = utility if utility is not None else log1p_utility()
    if not returns:
        raise ValueError("need at least one strategy")
    lengths = {name: len(series) for name, series in returns.items()}
    if len(set(lengths.values())) != 1:
        raise ValueError(f"strategies cover different period counts: {lengths}")

    stats = []
    for name, series in returns.items():
        r = np.asarray(series, dtype=np.float64)
        if r.size == 0:
            raise ValueError(f"strategy {name!r} has no periods")
        if not np.all(np.isfinite(r)):
            raise ValueError(f"strategy {name!r} has non-finite returns")
        if np.any(r <= -1.0):
            i = int(np.flatnonzero(r <= -1.0)[0])
            raise DomainError(
                f"strategy {name!r}, period {i + 1}: return {float(r[i])!r} "
                "is a total-or-worse loss; growth statistics need returns above -1"
            )
        ok = np.atleast_1d(in_domain(u, r))
        if not ok.all():
            i = int(np.flatnonzero(~ok)[0])
            raise DomainError(
                f"strategy {name!r}, period {i + 1}: return {float(r[i])!r} "
                f"is outside the domain of {format_utility(u)}"
            )
        utility_mean = float(np.mean(np.asarray(forward(u, r))))
        stats.append(
            StrategyStats(
                name=name,
                periods=int(r.size),
                arithmetic_mean=float(np.mean(r)),
                mean_log_return=float(np.mean(np.log1p(r))),
                compound_factor=float(np.prod(1.0 + r)),
                utility_mean=utility_mean,
                premium=-utility_mean,
                acceptable=bool(-utility_mean <= 1e-12),
            )
        )

    def ranked(key) -> tuple[str, ...]:
        return tuple(s.name for s in sorted(stats, key=key, reverse=True))

    ranking_arithmetic = ranked(lambda s: s.arithmetic_mean)
    ranking_log = ranked(lambda s: s.mean_log_return)
    ranking_compound = ranked(lambda s: s.compound_factor)
    return PortfolioReport(
        utility=u,
        strategies=tuple(stats),
        ranking_arithmetic=ranking_arithmetic,
        ranking_log=ranking_log,
        ranking_compound=ranking_compound,
        rankings_disagree=ranking_arithmetic != ranking_log,
    )
