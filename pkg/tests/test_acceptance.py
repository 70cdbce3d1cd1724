"""End-to-end acceptance gate.

Twelve criteria, one test each, so a verbose run prints one pass/fail
line per criterion.  Tolerances and runtime budgets are asserted inside
the tests themselves.
"""

import math
import time

import numpy as np
import pytest

import gamble_calc as gc


def scalar_gamble(x: float) -> gc.Gamble:
    return gc.Gamble.constant(gc.StateSpace(("s",)), x)


COIN_SPACE = gc.StateSpace(("up", "down"))
COIN = gc.Gamble(COIN_SPACE, np.array([0.5, -0.4]))
FAIR = gc.ProbabilityMeasure.uniform(COIN_SPACE)


def test_criterion_two_leg_growth_combination():
    u = gc.log1p_utility()
    f, g = scalar_gamble(0.10), scalar_gamble(0.20)
    gc.combine(u, f, g)  # warm-up outside the timed window
    t0 = time.perf_counter()
    r = gc.combine(u, f, g)
    elapsed = time.perf_counter() - t0

    assert r.combined.rewards[0] == pytest.approx(0.32, abs=1e-12)
    assert r.transformed_inputs[0][0] == pytest.approx(0.0953, abs=5e-5)
    assert r.transformed_inputs[1][0] == pytest.approx(0.1823, abs=5e-5)
    assert r.transformed_total[0] == pytest.approx(0.2776, abs=5e-5)
    assert elapsed < 1e-3


def test_criterion_mixed_outcome_expectation_vs_growth():
    sp = gc.StateSpace(("gain", "loss"))
    h = gc.Gamble(sp, np.array([0.25, -0.10]))
    p = gc.ProbabilityMeasure.uniform(sp)
    gc.expectation(h, p)
    t0 = time.perf_counter()
    mean = gc.expectation(h, p)
    log_return = -gc.rho_log(h, p)
    elapsed = time.perf_counter() - t0

    assert mean == 0.075
    assert log_return == pytest.approx(0.05885, abs=1e-4)
    assert log_return == pytest.approx(0.058891517828191736, abs=1e-12)
    assert elapsed < 1e-3


def test_criterion_three_leg_sequence():
    u = gc.log1p_utility()
    legs = [scalar_gamble(0.05), scalar_gamble(-0.02), scalar_gamble(0.10)]
    r = gc.combine_seq(u, legs)
    result = float(r.combined.rewards[0])
    log_sum = float(sum(np.log1p([0.05, -0.02, 0.10])))

    assert result == pytest.approx(0.1319, abs=5e-5)
    assert log_sum == pytest.approx(0.1239, abs=5e-5)
    assert math.log1p(result) == pytest.approx(log_sum, abs=1e-10)


def test_criterion_exhaustive_two_period_wealth():
    outs = gc.exhaustive_paths(COIN, FAIR, 2, initial_wealth=100.0)
    finals = sorted((o.final_wealth for o in outs), reverse=True)
    assert finals == pytest.approx([225.0, 90.0, 90.0, 36.0], abs=1e-9)

    steady = gc.exhaustive_paths(scalar_gamble(0.05), gc.ProbabilityMeasure.uniform(gc.StateSpace(("s",))), 2, initial_wealth=100.0)
    assert len(steady) == 1
    benchmark = steady[0].final_wealth
    assert benchmark == pytest.approx(110.25, abs=1e-9)
    assert sum(1 for w in finals if w < benchmark) == 3


def test_criterion_large_ensemble_growth_divergence():
    t0 = time.perf_counter()
    ens = gc.simulate(
        gc.SimulationConfig(
            gamble=COIN, measure=FAIR, periods=30, trajectories=100_000, seed=42
        )
    )
    summary = gc.growth_rates(ens)
    elapsed = time.perf_counter() - t0

    target = 0.5 * math.log(1.5) + 0.5 * math.log(0.6)
    assert target == pytest.approx(-0.05268, abs=5e-6)
    assert abs(summary.time_average_mean - target) <= 3 * summary.time_average_stderr

    assert summary.theoretical_ensemble_growth == pytest.approx(math.log(1.05), abs=1e-12)
    assert math.log(1.05) == pytest.approx(0.04879, abs=5e-6)
    ratios = ens.ensemble_mean_path[1:] / ens.ensemble_mean_path[:-1]
    assert ratios == pytest.approx(np.full(30, 1.05), rel=1e-12)

    assert summary.time_average_mean < 0 < summary.theoretical_ensemble_growth
    assert elapsed < 10.0


def test_criterion_return_series_comparison():
    volatile = [0.08, -0.03, 0.12, 0.05, -0.02]
    steady = [0.04, 0.03, 0.05, 0.04, 0.03]
    report = gc.analyze_portfolio({"volatile": volatile, "steady": steady})
    stats = {s.name: s for s in report.strategies}
    v, s = stats["volatile"], stats["steady"]

    assert v.arithmetic_mean == pytest.approx(0.04, abs=1e-15)
    assert s.arithmetic_mean == pytest.approx(0.038, abs=1e-15)
    assert v.mean_log_return == pytest.approx(0.037684, abs=1e-6)
    assert s.mean_log_return == pytest.approx(0.037270, abs=1e-6)
    assert v.compound_factor == pytest.approx(1.20733, abs=1e-5)
    assert s.compound_factor == pytest.approx(1.20484, abs=1e-5)
    assert v.compound_factor == pytest.approx(1.207338048, abs=1e-6)
    assert s.compound_factor == pytest.approx(1.204842912, abs=1e-6)
    assert s.compound_factor == pytest.approx(1.205, abs=5e-4)


def test_criterion_operator_law_audit():
    kinds = [
        gc.log1p_utility(),
        gc.power_utility(0.5),
        gc.power_utility(2.0),
        gc.exponential_utility(0.5),
        gc.exponential_utility(1.0),
    ]
    t0 = time.perf_counter()
    for u in kinds:
        report = gc.run_laws(u, trials=10_000, seed=2026, threshold=1e-9)
        assert report.all_passed, (u.kind, [r.name for r in report.results if not r.passed])
        for law in report.results:
            assert law.max_residual <= 1e-9, (u.kind, law.name, law.max_residual)
    elapsed = time.perf_counter() - t0
    assert elapsed < 5.0


def test_criterion_log_domain_additivity():
    rng = np.random.default_rng(99)
    sp = gc.StateSpace(("s",))
    worst = 0.0
    for _ in range(10_000):
        a, b = rng.uniform(-0.99, 10.0, size=2)
        residual = gc.log_additivity_check(
            gc.Gamble(sp, np.array([a])), gc.Gamble(sp, np.array([b]))
        )
        worst = max(worst, residual)
    assert worst <= 1e-10


def test_criterion_loss_avoidance_agrees_with_functional_search():
    rng = np.random.default_rng(271828)
    agreements = 0
    for _ in range(200):
        m = int(rng.integers(2, 7))
        k = int(rng.integers(1, 9))
        rows = rng.normal(scale=1.5, size=(k, m))
        sp = gc.StateSpace(tuple(f"s{i}" for i in range(m)))
        d = gc.AcceptanceSet.classical(sp, [gc.Gamble(sp, row) for row in rows])

        loss = gc.avoids_partial_loss(d)
        search = gc.find_representing_functional(d)
        assert loss.avoids == search.feasible
        agreements += 1

        u_mat = d.transformed_matrix()
        if not loss.avoids:
            lam = loss.witness
            assert lam is not None and np.all(lam >= -1e-12)
            assert np.max(u_mat @ lam) <= loss.worst_value + 1e-8
        if search.feasible and search.margin is not None:
            w = search.functional.weights
            assert np.all(w >= -1e-12)
            assert np.sum(w) == pytest.approx(1.0, abs=1e-8)
            assert np.min(w @ u_mat) == pytest.approx(search.margin, abs=1e-8)
    assert agreements == 200


def test_criterion_combination_closure_with_witnesses():
    rng = np.random.default_rng(1618)
    for _ in range(1_000):
        m = int(rng.integers(2, 5))
        k = int(rng.integers(1, 5))
        sp = gc.StateSpace(tuple(f"s{i}" for i in range(m)))
        u_mat = rng.normal(scale=0.5, size=(m, k))
        gens = [gc.Gamble(sp, np.expm1(u_mat[:, j])) for j in range(k)]
        d = gc.AcceptanceSet(sp, tuple(gens), gc.log1p_utility())

        lam_f, lam_g = rng.uniform(0.0, 1.0, size=(2, k))
        s_f, s_g = rng.exponential(scale=0.3, size=(2, m))
        z_f = u_mat @ lam_f + s_f
        z_g = u_mat @ lam_g + s_g
        f = gc.Gamble(sp, np.expm1(z_f))
        g = gc.Gamble(sp, np.expm1(z_g))
        assert gc.cone_membership(d, f).accepted
        assert gc.cone_membership(d, g).accepted

        combined = gc.combine(gc.log1p_utility(), f, g).combined
        result = gc.cone_membership(d, combined)
        assert result.accepted

        # the summed log-space witness reconstructs the combination
        recon = u_mat @ (lam_f + lam_g) + (s_f + s_g)
        assert np.max(np.abs(recon - np.log1p(combined.rewards))) <= 1e-8
        # and the solver's own witness reconstructs it too
        lp_recon = u_mat @ result.coefficients + result.slack
        assert np.max(np.abs(lp_recon - np.log1p(combined.rewards))) <= 1e-8


def test_criterion_entropic_risk_small_aversion_limit():
    rng = np.random.default_rng(5772)
    for _ in range(1_000):
        m = int(rng.integers(2, 6))
        sp = gc.StateSpace(tuple(f"s{i}" for i in range(m)))
        # reward span 2.4 caps the curvature term at (1e-4/2)*(2.4/2)^2 = 7.2e-5
        f = gc.Gamble(sp, rng.uniform(-0.9, 1.5, size=m))
        w = rng.exponential(size=m)
        p = gc.ProbabilityMeasure(sp, w / w.sum())
        rho = gc.rho_exponential(f, p, 1e-4)
        assert rho == pytest.approx(-gc.expectation(f, p), abs=1e-4)


def test_criterion_growth_rate_ordering():
    rng = np.random.default_rng(31415)
    for trial in range(1_000):
        m = int(rng.integers(2, 6))
        sp = gc.StateSpace(tuple(f"s{i}" for i in range(m)))
        constant = trial % 10 == 0
        if constant:
            f = gc.Gamble.constant(sp, float(rng.uniform(-0.5, 2.0)))
        else:
            f = gc.Gamble(sp, rng.uniform(-0.8, 3.0, size=m))
        w = rng.exponential(size=m)
        p = gc.ProbabilityMeasure(sp, w / w.sum())
        ens = gc.simulate(
            gc.SimulationConfig(gamble=f, measure=p, periods=2, trajectories=2, seed=1)
        )
        gap = ens.theoretical_ensemble_growth - ens.theoretical_time_growth
        assert gap >= -1e-15
        if constant:
            assert gap <= 1e-12
        else:
            assert gap > 1e-12
