import math

import numpy as np
import pytest

from gamble_calc import (
    DomainError,
    ParseError,
    analyze_portfolio,
    identity_utility,
    parse_returns_csv,
    power_utility,
)

VOLATILE = [0.08, -0.03, 0.12, 0.05, -0.02]
STEADY = [0.04, 0.03, 0.05, 0.04, 0.03]


def csv_text():
    lines = ["volatile,steady"]
    lines += [f"{a},{b}" for a, b in zip(VOLATILE, STEADY)]
    return "\n".join(lines) + "\n"


class TestParsing:
    def test_happy_path(self):
        cols = parse_returns_csv(csv_text())
        assert list(cols) == ["volatile", "steady"]
        assert cols["volatile"] == pytest.approx(VOLATILE)

    def test_blank_rows_skipped(self):
        cols = parse_returns_csv("a,b\n\n0.1,0.2\n\n0.3,0.4\n")
        assert cols["a"] == pytest.approx([0.1, 0.3])

    def test_duplicate_header(self):
        with pytest.raises(ParseError):
            parse_returns_csv("a,a\n0.1,0.2\n")

    def test_ragged_row(self):
        with pytest.raises(ParseError) as err:
            parse_returns_csv("a,b\n0.1\n")
        assert "row 2" in str(err.value)

    def test_non_number_names_row_and_column(self):
        with pytest.raises(ParseError) as err:
            parse_returns_csv("a,b\n0.1,x\n")
        msg = str(err.value)
        assert "row 2" in msg and "b" in msg

    def test_empty(self):
        with pytest.raises(ParseError):
            parse_returns_csv("")


class TestAnalysis:
    def test_summary_statistics(self):
        report = analyze_portfolio(parse_returns_csv(csv_text()))
        by_name = {s.name: s for s in report.strategies}
        v, s = by_name["volatile"], by_name["steady"]
        assert v.arithmetic_mean == pytest.approx(0.04, abs=1e-15)
        assert s.arithmetic_mean == pytest.approx(0.038, abs=1e-15)
        assert v.mean_log_return == pytest.approx(0.03768359516206711, abs=1e-12)
        assert s.mean_log_return == pytest.approx(0.03726983899181668, abs=1e-12)
        assert v.compound_factor == pytest.approx(1.207338048, abs=1e-9)
        assert s.compound_factor == pytest.approx(1.204842912, abs=1e-9)

    def test_compound_equals_exp_of_log_sum(self):
        report = analyze_portfolio(parse_returns_csv(csv_text()))
        for s in report.strategies:
            assert s.compound_factor == pytest.approx(
                math.exp(s.mean_log_return * s.periods), rel=1e-12
            )

    def test_rankings_can_disagree(self):
        report = analyze_portfolio(parse_returns_csv(csv_text()))
        assert report.ranking_arithmetic == ("volatile", "steady")
        assert report.ranking_log == ("volatile", "steady")
        # these two series agree on ordering; a sharper contrast flips them
        contrast = parse_returns_csv("a,b\n0.5,0.05\n-0.4,0.04\n0.5,0.05\n-0.4,0.04\n")
        flipped = analyze_portfolio(contrast)
        assert flipped.ranking_arithmetic == ("a", "b")
        assert flipped.ranking_log == ("b", "a")
        assert flipped.ranking_compound == ("b", "a")
        assert flipped.rankings_disagree

    def test_acceptability_follows_premium_sign(self):
        report = analyze_portfolio(
            parse_returns_csv("sink,rise\n-0.5,0.1\n0.2,0.1\n")
        )
        by_name = {s.name: s for s in report.strategies}
        assert not by_name["sink"].acceptable
        assert by_name["rise"].acceptable

    def test_custom_utility(self):
        cols = parse_returns_csv("a,b\n0.04,0.3\n0.09,0.1\n")
        report = analyze_portfolio(cols, utility=power_utility(0.5))
        by_name = {s.name: s for s in report.strategies}
        expected = np.mean(2.0 * np.sqrt([0.04, 0.09]))
        assert by_name["a"].utility_mean == pytest.approx(float(expected), abs=1e-12)

    def test_identity_matches_arithmetic(self):
        report = analyze_portfolio(parse_returns_csv(csv_text()), utility=identity_utility())
        for s in report.strategies:
            assert s.utility_mean == pytest.approx(s.arithmetic_mean, abs=1e-15)

    def test_returns_below_floor_rejected(self):
        with pytest.raises(DomainError) as err:
            analyze_portfolio(parse_returns_csv("a\n-1.5\n"))
        assert "a" in str(err.value)

    def test_unequal_lengths_rejected(self):
        with pytest.raises(ValueError):
            analyze_portfolio({"a": [0.1, 0.2], "b": [0.1]})
