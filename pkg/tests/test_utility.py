import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gamble_calc import (
    DomainError,
    ParseError,
    RangeError,
    check_well_behaved,
    discounted_utility,
    exponential_utility,
    format_utility,
    identity_utility,
    log1p_utility,
    parse_utility,
    power_utility,
)


class TestForwardInverse:
    def test_identity(self):
        u = identity_utility()
        assert u.forward(3.5) == 3.5
        assert u.inverse(-2.0) == -2.0

    def test_log1p_values(self):
        u = log1p_utility()
        assert u.forward(0.10) == pytest.approx(0.09531017980432486, abs=1e-15)
        assert u.forward(0.20) == pytest.approx(0.1823215567939546, abs=1e-15)
        assert u.inverse(math.log(1.32)) == pytest.approx(0.32, abs=1e-12)

    def test_log1p_domain(self):
        u = log1p_utility()
        with pytest.raises(DomainError):
            u.forward(-1.0)
        with pytest.raises(DomainError):
            u.forward(-1.5)

    def test_power_quadratic(self):
        u = power_utility(2.0)
        # x^2/2 at 0.3 and 0.4, summed, pulled back: sqrt(2*0.125) = 0.5
        assert u.forward(0.3) == pytest.approx(0.045, abs=1e-15)
        assert u.inverse(u.forward(0.3) + u.forward(0.4)) == pytest.approx(0.5, abs=1e-12)

    def test_power_inverse_value(self):
        u = power_utility(2.0)
        assert u.inverse(0.02) == pytest.approx(0.2, abs=1e-12)

    def test_power_negative_exponent_domain(self):
        u = power_utility(-1.0)
        with pytest.raises(DomainError):
            u.forward(0.0)
        assert u.forward(2.0) == pytest.approx(-0.5, abs=1e-15)

    def test_power_zero_gamma_rejected(self):
        with pytest.raises(ValueError):
            power_utility(0.0)

    def test_exponential_values(self):
        u = exponential_utility(1.0)
        assert u.forward(0.0) == 0.0
        assert u.forward(50.0) == pytest.approx(1.0, abs=1e-15)
        assert u.inverse(u.forward(0.7)) == pytest.approx(0.7, abs=1e-12)

    def test_exponential_range_ceiling(self):
        u = exponential_utility(1.0)
        with pytest.raises(RangeError):
            u.inverse(1.0)
        with pytest.raises(RangeError):
            u.inverse(1.5)

    def test_exponential_needs_positive_alpha(self):
        with pytest.raises(ValueError):
            exponential_utility(0.0)
        with pytest.raises(ValueError):
            exponential_utility(-1.0)

    def test_discounted_value(self):
        u = discounted_utility(0.5)
        # (sqrt(4) - 0.5) / 0.5 = 3
        assert u.forward(4.0) == pytest.approx(3.0, abs=1e-12)

    def test_discounted_domain(self):
        u = discounted_utility(0.5)
        with pytest.raises(DomainError):
            u.forward(0.0)

    def test_discounted_shifted_has_zero_offset_removed(self):
        plain = discounted_utility(0.5)
        shifted = discounted_utility(0.5, shifted=True)
        x = 2.3
        assert shifted.forward(x) == pytest.approx(plain.forward(x) + 1.0, abs=1e-12)

    def test_discounted_alpha_bounds(self):
        with pytest.raises(ValueError):
            discounted_utility(1.0)
        with pytest.raises(ValueError):
            discounted_utility(-0.1)
        discounted_utility(0.0)

    @given(st.floats(-0.99, 100.0))
    def test_log1p_round_trip(self, x):
        u = log1p_utility()
        assert u.inverse(u.forward(x)) == pytest.approx(x, rel=1e-12, abs=1e-12)

    @given(st.floats(0.001, 50.0), st.sampled_from([0.5, 2.0, 3.0, -1.0, -0.5]))
    def test_power_round_trip(self, x, gamma):
        u = power_utility(gamma)
        assert u.inverse(u.forward(x)) == pytest.approx(x, rel=1e-9)

    @given(st.floats(-5.0, 5.0), st.sampled_from([0.5, 1.0, 2.0]))
    def test_exponential_round_trip(self, x, alpha):
        u = exponential_utility(alpha)
        assert u.inverse(u.forward(x)) == pytest.approx(x, rel=1e-9, abs=1e-9)

    def test_array_forward(self):
        u = log1p_utility()
        out = u.forward(np.array([0.1, 0.2]))
        assert out == pytest.approx([0.09531017980432486, 0.1823215567939546])

    @given(st.floats(-0.99, 10.0), st.floats(-0.99, 10.0))
    def test_log1p_strictly_increasing(self, x, y):
        u = log1p_utility()
        if x < y:
            assert u.forward(x) < u.forward(y)


class TestParseFormat:
    @pytest.mark.parametrize(
        "text,kind,param",
        [
            ("identity", "identity", None),
            ("log1p", "log1p", None),
            ("power:2", "power", 2.0),
            ("power:0.5", "power", 0.5),
            ("exp:1", "exponential", 1.0),
            ("exp:0.25", "exponential", 0.25),
            ("discounted:0.3", "discounted", 0.3),
            ("discounted-shifted:0.3", "discounted", 0.3),
        ],
    )
    def test_parse(self, text, kind, param):
        u = parse_utility(text)
        assert u.kind == kind
        assert u.param == param

    def test_parse_shifted_flag(self):
        assert parse_utility("discounted-shifted:0.3").shifted
        assert not parse_utility("discounted:0.3").shifted

    @pytest.mark.parametrize(
        "bad",
        ["", "log", "power", "power:", "power:x", "exp:-1", "identity:2", "discounted:1.5"],
    )
    def test_parse_rejects(self, bad):
        with pytest.raises(ParseError):
            parse_utility(bad)

    @pytest.mark.parametrize(
        "text", ["identity", "log1p", "power:2", "power:0.5", "exp:1", "discounted-shifted:0.25"]
    )
    def test_round_trip(self, text):
        assert format_utility(parse_utility(text)) == text

    def test_format_canonicalizes_integral_params(self):
        assert format_utility(parse_utility("power:2.0")) == "power:2"


class TestRiskAversion:
    def test_relative(self):
        assert log1p_utility().relative_risk_aversion() == 1.0
        assert power_utility(0.5).relative_risk_aversion() == 0.5
        assert discounted_utility(0.3).relative_risk_aversion() == 0.3
        assert exponential_utility(2.0).relative_risk_aversion() is None

    def test_absolute(self):
        assert exponential_utility(2.0).absolute_risk_aversion() == 2.0
        assert identity_utility().absolute_risk_aversion() == 0.0
        assert log1p_utility().absolute_risk_aversion() is None


class TestClosureProbing:
    def test_log1p_closed(self):
        report = check_well_behaved(log1p_utility(), [(-0.5, 0.2), (3.0, 4.0)])
        assert report.closed_on_probes
        assert all(p.closed for p in report.probes)

    def test_exponential_conditional(self):
        u = exponential_utility(1.0)
        # e^-3 + e^-3 < 1: the transformed sum overshoots the range ceiling
        report = check_well_behaved(u, [(3.0, 3.0)])
        assert not report.closed_on_probes
        assert not report.probes[0].sum_in_range
        assert "exp(-1.0*x1) + exp(-1.0*x2) > 1" in report.symbolic_verdict

    def test_exponential_closed_region(self):
        u = exponential_utility(1.0)
        report = check_well_behaved(u, [(-1.0, -0.5), (0.1, 0.05)])
        assert report.closed_on_probes

    def test_probe_outside_domain_is_an_error(self):
        with pytest.raises(DomainError):
            check_well_behaved(log1p_utility(), [(-2.0, 0.0)])

    def test_unshifted_discounted_flagged(self):
        report = check_well_behaved(discounted_utility(0.5), [(1.0, 2.0)])
        assert "not combination-ready" in report.symbolic_verdict


class TestCombinationSupport:
    def test_supported_kinds(self):
        assert identity_utility().supports_combination()
        assert log1p_utility().supports_combination()
        assert power_utility(2.0).supports_combination()
        assert exponential_utility(1.0).supports_combination()
        assert discounted_utility(0.5, shifted=True).supports_combination()
        assert not discounted_utility(0.5).supports_combination()

    def test_zero_identity_kinds(self):
        assert identity_utility().has_zero_identity()
        assert log1p_utility().has_zero_identity()
        assert power_utility(2.0).has_zero_identity()
        assert exponential_utility(1.0).has_zero_identity()
        assert not power_utility(-1.0).has_zero_identity()
