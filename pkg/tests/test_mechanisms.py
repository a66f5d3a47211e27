import math

import numpy as np
import pytest

from core.config import LabConfig
from core.domain.game_model import Dominant, SelfDependence, Star, TwoClass, WeakestLink
from core.domain.profiles import InvestmentProfile, Mechanism, TaxProfile
from core.errors import ConsistencyError, InvalidInputError
from core.services.costs import risk_sensitivities, user_costs
from mechanisms import (
    EESelection, Message, check_bb, check_vp, externality_equilibrium_taxes, externality_outcome,
    pivotal_taxes, select_exit_equilibrium,
)
from solver import all_exit_equilibria, social_optimum

PIVOTAL_MODELS = [
    SelfDependence(10, 6, 1),
    SelfDependence(0.5, 3, 0.01),
    SelfDependence(2, 6, 1.9),
    Dominant(5, 10, 0.45),
    Dominant(12, 10, 0.45),
    TwoClass(4, 0.1, 8, 2, 0.05),
    TwoClass(4, 0.9, 8, 2, 0.05),
    Star(6, 0.5),
    Star(4, 1, "reciprocal"),
    WeakestLink(4, 1, 1),
    WeakestLink(3, 2, 0.4),
]


class TestExternalityOutcome:
    def test_three_user_example(self):
        messages = [
            Message([3, 0, 0], [1, 1, 1]),
            Message([0, 3, 0], [2, 0, 0]),
            Message([0, 0, 3], [0, 0, 0]),
        ]
        x, taxes = externality_outcome(messages)
        assert x.as_list() == pytest.approx([1, 1, 1])
        assert taxes.as_list() == pytest.approx([20, -3, -17])
        assert taxes.mechanism is Mechanism.EXTERNALITY

    def test_identical_messages_cost_nothing(self):
        message = Message([0.5, 1.0, 2.0, 0.0], [0.3, 0.1, 0.7, 1.0])
        x, taxes = externality_outcome([message] * 4)
        assert x.as_list() == pytest.approx([0.5, 1.0, 2.0, 0.0])
        assert np.allclose(taxes.taxes, 0.0)

    def test_taxes_always_balance(self, rng):
        for _ in range(100):
            n = int(rng.integers(3, 9))
            messages = [Message(rng.uniform(0, 5, n), rng.uniform(0, 3, n)) for _ in range(n)]
            _, taxes = externality_outcome(messages)
            assert abs(taxes.budget) <= 1e-9

    def test_needs_three_users(self):
        with pytest.raises(InvalidInputError):
            externality_outcome([Message([1, 1], [1, 1])] * 2)

    def test_message_lengths_must_match_users(self):
        with pytest.raises(InvalidInputError):
            externality_outcome([Message([1, 1], [1, 1])] * 3)

    @pytest.mark.parametrize("proposal, prices", [([1, -1, 0], [1, 1, 1]), ([1, 1, 1], [1, 1]),
                                                  ([1, np.inf, 1], [1, 1, 1])])
    def test_invalid_messages(self, proposal, prices):
        with pytest.raises(InvalidInputError):
            Message(proposal, prices)


class TestExternalityTaxes:
    def test_dominant(self, dominant, lab_config):
        report = externality_equilibrium_taxes(dominant, config=lab_config)
        assert report.taxes[0] == pytest.approx(-0.381553, abs=1e-6)
        assert np.allclose(report.taxes[1:], 0.0423948, atol=1e-7)
        assert abs(report.budget) <= 1e-9

        x_star, _ = social_optimum(dominant, lab_config)
        inside = user_costs(x_star, dominant)[1] + report.taxes[1]
        assert inside == pytest.approx(0.0513948, abs=1e-7)
        assert report.participation_benefit[1] == pytest.approx(0.01 - 0.0513948, abs=1e-7)
        assert not any(report.vp_selected[1:])

    def test_dominant_closed_forms(self, dominant, lab_config):
        x_star, _ = social_optimum(dominant, lab_config)
        report = externality_equilibrium_taxes(dominant, x_star, config=lab_config)
        n, c = 10, 0.45
        assert report.taxes[0] == pytest.approx(c * x_star[0] * (1 / n - 1), rel=1e-12)
        assert report.taxes[1] == pytest.approx(c / n * x_star[0], rel=1e-12)

    def test_self_dependence_taxes_vanish(self, selfdep, lab_config):
        report = externality_equilibrium_taxes(selfdep, config=lab_config)
        assert np.allclose(report.taxes, 0.0, atol=1e-12)
        assert not any(report.vp_selected)

    def test_participants_free_ride_case_is_voluntary(self, lab_config):
        model = SelfDependence(0.5, 3, 0.01)
        exits = all_exit_equilibria(model, lab_config)
        omega = [[e.case_label for e in eqs].index("omega") for eqs in exits]
        report = externality_equilibrium_taxes(model, selection=omega, exits=exits, config=lab_config)
        assert all(report.vp_selected)

    def test_rejects_non_optimal_profile(self, selfdep, lab_config):
        with pytest.raises(InvalidInputError):
            externality_equilibrium_taxes(selfdep, InvestmentProfile.uniform(6, 0.5), config=lab_config)

    def test_budget_identity_uses_configured_tolerance(self, dominant, lab_config, monkeypatch):
        monkeypatch.setattr("mechanisms.externality.risk_sensitivities",
                            lambda levels, model: 1.1 * risk_sensitivities(levels, model))
        with pytest.raises(ConsistencyError):
            externality_equilibrium_taxes(dominant, config=lab_config)
        loose = LabConfig(config_path="", budget_identity_tolerance=1.0)
        report = externality_equilibrium_taxes(dominant, config=loose)
        assert report.budget > 0
        assert report.tax_profile(loose).balance_tolerance == 1.0


class TestPivotalTaxes:
    def test_dominant(self, dominant, lab_config):
        report = pivotal_taxes(dominant, config=lab_config)
        assert report.taxes[0] == pytest.approx(-1.717079, abs=1e-6)
        expected_other = 0.45 / 5 * (math.log(10 / 9) - 1 / 10)
        assert np.allclose(report.taxes[1:], expected_other, atol=1e-9)
        assert report.budget == pytest.approx(-1.7127375, abs=1e-6)
        assert report.bb_verdict is False
        assert check_bb(report, lab_config) == (False, pytest.approx(report.budget))

    def test_self_dependence_alpha_runs_a_deficit(self, lab_config):
        report = pivotal_taxes(SelfDependence(2, 6, 1.9), config=lab_config)
        assert report.budget < 0

    @pytest.mark.parametrize("model", PIVOTAL_MODELS, ids=lambda m: m.describe())
    def test_voluntary_for_every_exit_equilibrium(self, model, lab_config):
        exits = all_exit_equilibria(model, lab_config)
        for k in range(max(len(eqs) for eqs in exits)):
            selection = [min(k, len(eqs) - 1) for eqs in exits]
            report = pivotal_taxes(model, selection, exits=exits, config=lab_config)
            assert all(report.vp_selected), (selection, report.participation_benefit)

    @pytest.mark.parametrize("model", PIVOTAL_MODELS[:6], ids=lambda m: m.describe())
    def test_alignment_identity(self, model, lab_config):
        x_star, _ = social_optimum(model, lab_config)
        exits = all_exit_equilibria(model, lab_config)
        report = pivotal_taxes(model, exits=exits, x_star=x_star, config=lab_config)
        total = user_costs(x_star, model).sum()
        for i, k in enumerate(report.selected_exit):
            exit_costs = user_costs(exits[i][k].profile, model)
            inside = user_costs(x_star, model)[i] + report.taxes[i]
            assert inside == pytest.approx(total - (exit_costs.sum() - exit_costs[i]), abs=1e-12)


class TestSelection:
    def test_policies(self, lab_config):
        model = SelfDependence(0.5, 3, 0.01)
        equilibria = all_exit_equilibria(model, lab_config)[0]
        outlier_costs = [user_costs(e.profile, model)[0] for e in equilibria]
        assert select_exit_equilibrium(model, equilibria, EESelection.FIRST) == 0
        assert select_exit_equilibrium(model, equilibria, "least-beneficial") == int(np.argmax(outlier_costs))
        assert select_exit_equilibrium(model, equilibria, "most-beneficial") == int(np.argmin(outlier_costs))

    def test_report_keeps_every_exit(self, lab_config):
        model = SelfDependence(0.5, 3, 0.01)
        report = pivotal_taxes(model, EESelection.LEAST_BENEFICIAL, config=lab_config)
        assert report.exit_cases[0] == ["gamma", "omega", "zeta"]
        assert [len(row) for row in report.per_exit_benefit] == [3, 3, 3]

    @pytest.mark.parametrize("selection", [[0, 0], [0, 0, 5], "cheapest"])
    def test_invalid_selection(self, selection, lab_config):
        with pytest.raises(InvalidInputError):
            pivotal_taxes(SelfDependence(0.5, 3, 0.01), selection, config=lab_config)


class TestVerdicts:
    def test_check_bb_tolerance(self, lab_config):
        assert check_bb([1.0, -1.0 - 1e-10], lab_config)[0]
        assert not check_bb([1.0, -1.0 - 1e-6], lab_config)[0]
        assert check_bb(TaxProfile([0.2, 0.1], Mechanism.PIVOTAL), lab_config) == (True, pytest.approx(0.3))

    def test_check_vp_matches_report(self, dominant, lab_config):
        x_star, _ = social_optimum(dominant, lab_config)
        exits = all_exit_equilibria(dominant, lab_config)
        report = externality_equilibrium_taxes(dominant, x_star, exits=exits, config=lab_config)
        assert check_vp(dominant, report, x_star, exits, lab_config) == report.vp_verdicts
