import math

import numpy as np
import pytest

from core.domain.game_model import Dominant, GeneralWTE, SelfDependence, Star, TwoClass, WeakestLink
from core.errors import ConsistencyError, InvalidInputError
from core.services.costs import group_cost, user_costs
from solver import all_exit_equilibria, exit_equilibria, verify_exit_equilibrium
from solver.exit_equilibria import _ENUMERATORS

MODELS = [
    SelfDependence(10, 6, 1),
    SelfDependence(0.5, 3, 0.01),
    SelfDependence(2, 6, 1.9),
    SelfDependence(0.5, 6, 0.1),
    Dominant(5, 10, 0.45),
    Dominant(12, 10, 0.45),
    TwoClass(4, 0.1, 8, 2, 0.05),
    TwoClass(4, 0.9, 8, 2, 0.05),
    TwoClass(2, 0.1, 8, 2, 0.05),
    Star(5, 1),
    Star(10, 0.5),
    Star(4, 0.5, "reciprocal"),
    WeakestLink(4, 1, 1),
    WeakestLink(4, 0.5, 0.3),
    GeneralWTE([[3, 0.5, 0.2], [0.4, 2, 0.1], [0.3, 0.3, 4]], [0.2, 0.3, 0.1]),
]


def _outlier_cost(model, levels, outlier):
    return user_costs(levels, model)[outlier]


class TestExamples:
    def test_self_dependence_beta(self, selfdep, lab_config):
        [equilibrium] = exit_equilibria(selfdep, 0, lab_config)
        assert equilibrium.case_label == "beta"
        assert equilibrium.profile[0] == pytest.approx(0.141044, abs=1e-6)
        assert np.allclose(equilibrium.profile.levels[1:], 0.178430, atol=1e-6)

    def test_self_dependence_coexisting_cases(self, lab_config):
        equilibria = exit_equilibria(SelfDependence(0.5, 3, 0.01), 1, lab_config)
        assert [e.case_label for e in equilibria] == ["gamma", "omega", "zeta"]
        gamma, omega, _ = equilibria
        assert gamma.profile[1] == 0
        assert omega.profile.support() == (1,)
        assert omega.profile[1] == pytest.approx(math.log(50) / 0.5)

    def test_weakest_link(self, weakest_link, lab_config):
        [equilibrium] = exit_equilibria(weakest_link, 2, lab_config)
        assert equilibrium.profile[2] == 0
        assert np.allclose(np.delete(equilibrium.profile.levels, 2), math.log(3), atol=1e-8)

    def test_dominant_outliers(self, dominant, lab_config):
        [dominant_exit] = exit_equilibria(dominant, 0, lab_config)
        assert dominant_exit.case_label == "dominant-alpha"
        assert dominant_exit.profile[0] == 0
        assert np.allclose(dominant_exit.profile.levels[1:], math.log(20) / 9)

        [other_exit] = exit_equilibria(dominant, 3, lab_config)
        assert other_exit.profile.support() == (0,)
        assert other_exit.profile[0] == pytest.approx(math.log(100) / 5)

    def test_dominant_beta(self, lab_config):
        [equilibrium] = exit_equilibria(Dominant(12, 10, 0.45), 0, lab_config)
        assert equilibrium.case_label == "dominant-beta"
        assert equilibrium.profile.support() == (0,)

    def test_star_exits(self, star, lab_config):
        [root_exit] = exit_equilibria(star, 0, lab_config)
        assert root_exit.profile.support() == ()
        [leaf_exit] = exit_equilibria(star, 4, lab_config)
        assert leaf_exit.profile[0] == pytest.approx(math.log(9))
        assert leaf_exit.profile.support() == (0,)

    def test_leaves_can_protect_themselves_when_the_root_leaves(self, lab_config):
        free_ride, root_invests = exit_equilibria(Star(10, 0.5), 0, lab_config)
        assert free_ride.case_label == "root-free-rides"
        assert free_ride.profile[0] == 0
        assert np.allclose(free_ride.profile.levels[1:], math.log(2))
        assert root_invests.case_label == "root-exit"
        assert root_invests.profile.support() == (0,)
        assert root_invests.profile[0] == pytest.approx(math.log(2))

    def test_all_exit_equilibria_is_indexed_by_outlier(self, selfdep, lab_config):
        exits = all_exit_equilibria(selfdep, lab_config)
        assert [eqs[0].outlier for eqs in exits] == list(range(6))


@pytest.mark.parametrize("model", MODELS, ids=lambda m: m.describe())
class TestEquilibriumConditions:
    def test_outlier_cannot_improve(self, model, lab_config):
        for outlier in range(model.n_users):
            for equilibrium in exit_equilibria(model, outlier, lab_config):
                levels = equilibrium.profile.levels
                base = _outlier_cost(model, levels, outlier)
                for step in (-1e-3, 1e-3):
                    moved = levels.copy()
                    moved[outlier] = max(0.0, moved[outlier] + step)
                    assert _outlier_cost(model, moved, outlier) >= base - 1e-12

    def test_participants_minimise_their_group_cost(self, model, lab_config):
        for outlier in range(model.n_users):
            participants = [j for j in range(model.n_users) if j != outlier]
            for equilibrium in exit_equilibria(model, outlier, lab_config):
                levels = equilibrium.profile.levels
                base = group_cost(levels, model, participants)
                for j in participants:
                    for step in (-1e-3, 1e-3):
                        moved = levels.copy()
                        moved[j] = max(0.0, moved[j] + step)
                        assert group_cost(moved, model, participants) >= base - 1e-12

    def test_certificates(self, model, lab_config):
        for outlier in range(model.n_users):
            for equilibrium in exit_equilibria(model, outlier, lab_config):
                residual, certificate = verify_exit_equilibrium(model, equilibrium, lab_config)
                assert residual <= 1e-7
                assert certificate.max_residual <= 1e-7

    def test_free_riding_outcomes_come_first(self, model, lab_config):
        for outlier in range(model.n_users):
            invests = [e.pattern.outlier_invests for e in exit_equilibria(model, outlier, lab_config)]
            assert invests == sorted(invests)


class TestErrors:
    @pytest.mark.parametrize("outlier", [-1, 6])
    def test_outlier_out_of_range(self, selfdep, lab_config, outlier):
        with pytest.raises(InvalidInputError):
            exit_equilibria(selfdep, outlier, lab_config)

    def test_no_consistent_pattern(self, selfdep, lab_config, monkeypatch):
        monkeypatch.setitem(_ENUMERATORS, SelfDependence, lambda model, outlier, config: [])
        with pytest.raises(ConsistencyError):
            exit_equilibria(selfdep, 0, lab_config)
