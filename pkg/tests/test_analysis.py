import math

import pytest

from analysis import (
    Verdict, classify_dominant, classify_self_dependence, cross_validate_dominant,
    cross_validate_self_dependence, star_impossibility, two_class_exit_conditions,
    weakest_link_impossibility,
)
from analysis.cross_validation import check_self_dependence, sample_self_dependence
from analysis.impossibility import vp_caps, weakest_link_cap
from core.domain.game_model import Star
from core.errors import InvalidInputError


class TestSelfDependenceRegimes:
    @pytest.mark.parametrize("a, n, c, labels", [
        (10, 6, 1, ["beta"]),
        (2, 6, 1.9, ["alpha"]),
        (0.5, 6, 0.1, ["gamma"]),
        (0.5, 3, 0.01, ["gamma", "omega", "zeta"]),
    ])
    def test_cases(self, a, n, c, labels):
        assert [v.case_label for v in classify_self_dependence(a, n, c)] == labels

    def test_table_verdicts(self):
        gamma, omega, zeta = classify_self_dependence(0.5, 3, 0.01)
        assert (gamma.vp_externality, gamma.bb_pivotal) == (Verdict.NEVER, Verdict.NEVER)
        for verdict in (omega, zeta):
            assert (verdict.vp_externality, verdict.bb_pivotal) == (Verdict.ALWAYS, Verdict.ALWAYS)
            assert verdict.shared_condition
        assert not gamma.shared_condition

    def test_conditions_are_reported(self):
        [beta] = classify_self_dependence(10, 6, 1)
        [check] = beta.conditions
        assert check.lhs == pytest.approx(5 * math.log(1.4))
        assert check.rhs == pytest.approx(9 * math.log(10))
        assert not check.holds
        assert beta.parameters == {"family": "selfdep", "a": 10, "n": 6, "c": 1}

    @pytest.mark.parametrize("a, n, c", [(10, 2, 1), (1, 6, 2), (10, 6, -1)])
    def test_invalid(self, a, n, c):
        with pytest.raises(InvalidInputError):
            classify_self_dependence(a, n, c)


class TestDominantRegimes:
    @pytest.mark.parametrize("a, label", [(5, "dominant-alpha"), (12, "dominant-beta"), (9, "dominant-beta")])
    def test_cases(self, a, label):
        verdict = classify_dominant(a, 10, 0.45)
        assert verdict.case_label == label
        assert (verdict.vp_externality, verdict.bb_pivotal) == (Verdict.NEVER, Verdict.NEVER)


class TestTwoClassConditions:
    def test_reliant_outlier_invests(self):
        conditions = two_class_exit_conditions(4, 0.1, 8, 2, 0.05)
        assert conditions.reliant_outlier_invests.holds
        assert conditions.self_dependent_outlier_invests

    def test_high_reliant_weight(self):
        assert not two_class_exit_conditions(4, 0.9, 8, 2, 0.05).reliant_outlier_invests.holds

    def test_self_dependent_outlier_free_rides(self):
        conditions = two_class_exit_conditions(2, 0.1, 8, 2, 0.05)
        assert conditions.self_dependent_outlier_free_rides.holds
        assert not conditions.self_dependent_outlier_invests

    def test_invalid(self):
        with pytest.raises(InvalidInputError):
            two_class_exit_conditions(0.5, 0.1, 8, 2, 0.05)


class TestStarImpossibility:
    def test_exponential(self, lab_config):
        report = star_impossibility(10, 1, config=lab_config)
        assert report.cap_sum == pytest.approx(1 - math.log(10), abs=1e-9)
        assert report.closed_form_cap_sum == pytest.approx(report.cap_sum, abs=1e-9)
        assert report.impossible
        assert report.warnings == []

    def test_caps_use_the_exit_where_the_root_invests(self, lab_config):
        report = star_impossibility(10, 0.5, config=lab_config)
        assert report.cap_sum == pytest.approx(0.5 * (1 - math.log(10)), abs=1e-9)
        assert report.warnings == []
        free_ride_caps = vp_caps(Star(10, 0.5), lab_config)
        assert free_ride_caps[1:] == pytest.approx(report.per_user_cap[1:])
        assert free_ride_caps[0] != pytest.approx(report.per_user_cap[0])

    def test_reciprocal(self, lab_config):
        report = star_impossibility(10, 1, "reciprocal", config=lab_config)
        assert report.cap_sum == pytest.approx(-1.32458, abs=1e-5)
        assert report.impossible

    def test_two_users_are_degenerate(self, lab_config):
        report = star_impossibility(2, 1, config=lab_config)
        assert report.cap_sum == pytest.approx(0.306853, abs=1e-6)
        assert not report.impossible
        assert any("degenerate" in w for w in report.warnings)

    def test_costly_investment_has_no_closed_form(self, lab_config):
        report = star_impossibility(5, 2, config=lab_config)
        assert report.closed_form_cap_sum is None
        assert any("c <= 1" in w for w in report.warnings)

    def test_invalid(self, lab_config):
        with pytest.raises(InvalidInputError):
            star_impossibility(1, 1, config=lab_config)


class TestWeakestLinkImpossibility:
    def test_impossible_instance(self, lab_config):
        report = weakest_link_impossibility(4, 1, 1, config=lab_config)
        assert report.cap_sum == pytest.approx(-1.545177, abs=1e-6)
        assert report.numeric_cap_sum == pytest.approx(report.cap_sum, abs=1e-6)
        assert report.impossible
        assert report.externality_bb_vp is None

    def test_feasible_instance(self, lab_config):
        report = weakest_link_impossibility(2, 1, 0.5, config=lab_config)
        assert report.cap_sum == pytest.approx(0.306853, abs=1e-6)
        assert not report.impossible
        assert report.externality_bb_vp is True

    @pytest.mark.parametrize("rho", [0.5, 1.0, 2.0])
    def test_sign_changes_at_threshold(self, rho, lab_config):
        threshold = math.exp(rho) * 2 ** (1 - rho)
        assert weakest_link_cap(threshold, rho, 1.0) == pytest.approx(0.0, abs=1e-12)
        below = weakest_link_impossibility(threshold * (1 - 1e-3), rho, 1.0, config=lab_config)
        above = weakest_link_impossibility(threshold * (1 + 1e-3), rho, 1.0, config=lab_config)
        assert below.cap_sum > 0 and not below.impossible
        assert above.cap_sum < 0 and above.impossible
        assert above.numeric_cap_sum is None

    @pytest.mark.parametrize("n, rho, c", [(1.5, 1, 1), (4, 0, 1), (4, 1, -1), (4, math.inf, 1)])
    def test_invalid(self, n, rho, c, lab_config):
        with pytest.raises(InvalidInputError):
            weakest_link_impossibility(n, rho, c, config=lab_config)


class TestCrossValidation:
    def test_self_dependence_table(self):
        assert cross_validate_self_dependence(samples=200, seed=0) == []

    def test_dominant_table(self):
        assert cross_validate_dominant(samples=50, seed=0) == []

    def test_samples_are_reproducible(self):
        assert sample_self_dependence(20, 7) == sample_self_dependence(20, 7)
        assert sample_self_dependence(20, 7) != sample_self_dependence(20, 8)

    def test_every_sample_is_valid(self):
        for a, n, c in sample_self_dependence(100, 3):
            assert c < a and 3 <= n <= 20 and abs(a - 1) >= 0.05

    def test_single_sample(self, lab_config):
        assert check_self_dependence((0.5, 3, 0.01), lab_config) == []

    def test_process_pool_matches_serial(self):
        assert cross_validate_dominant(samples=10, seed=4, workers=2) == []
