import numpy as np
import pytest

from phacking import (
    PSYCH_REP,
    DomainError,
    NoRootError,
    ReplicationData,
    ReplicationStratum,
    TestDesign,
    UnachievableError,
    fit_h,
    fit_h_stratified,
    rr_hacked,
    rr_ratio,
    rr_regime,
    solve_psi_for_rr_ratio,
)
from phacking.estimator import _solve_h_for_rate

PHI = 10.0 / 11.0
OLD = TestDesign(0.05, 0.20, PHI)
NEW = TestDesign(0.005, 0.20, PHI)


class TestFitH:
    def test_psych_rep_point(self):
        h = fit_h(PSYCH_REP, OLD)
        assert h == pytest.approx(0.0722, abs=5e-4)
        # published point estimate 0.075, within the documented +-0.005
        assert abs(h - 0.075) <= 0.005
        assert rr_hacked(OLD, h) == pytest.approx(36 / 97, abs=1e-9)

    def test_near_ideal_replication_gives_tiny_h(self):
        rate = rr_hacked(OLD, 0.0) - 1e-6
        data = ReplicationData(total=10**9, replicated=round(rate * 10**9))
        assert fit_h(data, OLD) < 1e-4

    def test_inverse_of_rr_hacked_example(self):
        assert _solve_h_for_rate(rr_hacked(OLD, 0.15), OLD) == pytest.approx(0.15, abs=1e-9)

    def test_no_root_conditions(self):
        with pytest.raises(NoRootError):
            fit_h(ReplicationData(total=10, replicated=0), OLD)
        with pytest.raises(NoRootError):
            fit_h(ReplicationData(total=10, replicated=10), OLD)

    def test_round_trip_property(self):
        rng = np.random.default_rng(11)
        checked = 0
        while checked < 500:
            design = TestDesign(rng.uniform(1e-3, 0.5), rng.uniform(0.0, 0.9), rng.uniform(0.05, 0.95))
            h0 = rng.uniform(1e-6, 0.9)
            rate = rr_hacked(design, h0)
            if rate <= 0.0:
                continue
            root = _solve_h_for_rate(rate, design)
            assert root == pytest.approx(h0, abs=1e-8)
            assert abs(rr_hacked(design, root) - rate) <= 1e-9
            checked += 1

    def test_counts_validation(self):
        with pytest.raises(DomainError):
            ReplicationData(total=0, replicated=0)
        with pytest.raises(DomainError):
            ReplicationData(total=5, replicated=6)
        with pytest.raises(DomainError):
            ReplicationStratum(0.05, 0.005, 10, 5)


class TestFitHStratified:
    def test_psych_rep_range(self):
        est = fit_h_stratified(PSYCH_REP, OLD)
        assert est.point == pytest.approx(0.0722, abs=5e-4)
        # published range 0.05-0.15, accepted within +-0.03 per endpoint
        assert abs(est.range_low - 0.05) <= 0.03
        assert abs(est.range_high - 0.15) <= 0.03
        assert 0.0 <= est.range_low <= est.range_high < 1.0
        assert len(est.residuals) == 2
        assert not any(r["no_root"] for r in est.residuals)

    def test_homogeneous_strata_collapse_to_pooled_point(self):
        data = ReplicationData(
            total=97,
            replicated=36,
            strata=(
                ReplicationStratum(0.0, 0.005, 970, 360),
                ReplicationStratum(0.005, 0.05, 970, 360),
            ),
        )
        est = fit_h_stratified(data, OLD)
        assert est.range_low == pytest.approx(est.point, abs=1e-6)
        assert est.range_high == pytest.approx(est.point, abs=1e-6)

    def test_perfect_replication_stratum_flagged(self):
        data = ReplicationData(
            total=20,
            replicated=11,
            strata=(
                ReplicationStratum(0.0, 0.005, 10, 10),
                ReplicationStratum(0.005, 0.05, 10, 1),
            ),
        )
        est = fit_h_stratified(data, OLD)
        flagged = [r for r in est.residuals if r["no_root"]]
        assert len(flagged) == 1
        assert flagged[0]["p_range"] == (0.0, 0.005)

    def test_threshold_clustering_model(self):
        est = fit_h_stratified(PSYCH_REP, OLD, model="threshold_clustering")
        # lower stratum rate is h-free under this model, so only the
        # upper stratum yields a root (near the low end of the range)
        lower = next(r for r in est.residuals if r["p_range"] == (0.0, 0.005))
        upper = next(r for r in est.residuals if r["p_range"] == (0.005, 0.05))
        assert lower["no_root"]
        assert not upper["no_root"]
        assert upper["root"] == pytest.approx(0.053, abs=2e-3)

    def test_requires_strata(self):
        with pytest.raises(DomainError):
            fit_h_stratified(ReplicationData(total=10, replicated=4), OLD)

    def test_unknown_model(self):
        with pytest.raises(DomainError):
            fit_h_stratified(PSYCH_REP, OLD, model="nope")


class TestRRRatio:
    def test_paper_scenarios(self):
        new_50 = TestDesign(0.005, 0.50, PHI)
        assert rr_ratio(new_50, OLD, 0.05, 0.75) == pytest.approx(1.19, abs=5e-3)
        assert rr_ratio(new_50, OLD, 0.15, 1.0) == pytest.approx(0.81, abs=5e-3)

    def test_identical_designs_full_persistence(self):
        assert rr_ratio(OLD, OLD, 0.1, 1.0) == pytest.approx(1.0, abs=1e-12)

    def test_monotone_decreasing_in_psi_and_h(self):
        psis = np.linspace(0.0, 1.0, 11)
        vals = [rr_ratio(NEW, OLD, 0.1, p) for p in psis]
        assert all(a > b for a, b in zip(vals, vals[1:]))
        # monotone in h holds at full persistence; at low psi the hacked
        # mass shrinks faster at the new cutoff and the ratio can rise
        hs = np.linspace(0.01, 0.9, 11)
        vals = [rr_ratio(NEW, OLD, h, 1.0) for h in hs]
        assert all(a > b for a, b in zip(vals, vals[1:]))


class TestSolvePsi:
    def test_doubling_thresholds(self):
        sol = solve_psi_for_rr_ratio(2.0, NEW, OLD, 0.05)
        assert sol.achievable
        assert sol.psi == pytest.approx(0.154, abs=1e-3)
        sol15 = solve_psi_for_rr_ratio(2.0, NEW, OLD, 0.15)
        assert sol15.achievable
        # derived root; the source's figure-read value is 0.35
        assert sol15.psi == pytest.approx(0.397, abs=1e-3)

    def test_identity_regime(self):
        sol = solve_psi_for_rr_ratio(1.0, OLD, OLD, 0.3)
        assert sol.achievable
        assert sol.psi == 1.0

    def test_round_trip_with_rr_ratio(self):
        rng = np.random.default_rng(12)
        for _ in range(100):
            h = rng.uniform(0.01, 0.5)
            psi = rng.uniform(0.0, 1.0)
            target = rr_ratio(NEW, OLD, h, psi)
            sol = solve_psi_for_rr_ratio(target, NEW, OLD, h)
            assert sol.achievable
            assert rr_ratio(NEW, OLD, h, sol.psi) == pytest.approx(target, abs=1e-8)

    def test_unachievable_boundaries(self):
        too_high = rr_ratio(NEW, OLD, 0.05, 0.0) * 2.0
        sol = solve_psi_for_rr_ratio(too_high, NEW, OLD, 0.05)
        assert not sol.achievable and sol.psi == 0.0
        too_low = rr_ratio(NEW, OLD, 0.05, 1.0) / 2.0
        sol = solve_psi_for_rr_ratio(too_low, NEW, OLD, 0.05)
        assert not sol.achievable and sol.psi == 1.0
        with pytest.raises(UnachievableError):
            solve_psi_for_rr_ratio(too_high, NEW, OLD, 0.05, strict=True)

    def test_requires_positive_h(self):
        with pytest.raises(DomainError):
            solve_psi_for_rr_ratio(2.0, NEW, OLD, 0.0)
