import numpy as np
import pytest

from core.domain.game_model import Dominant, SelfDependence, Star, TwoClass, WeakestLink
from core.domain.profiles import InvestmentProfile, Mechanism, TaxProfile
from core.errors import InvalidInputError
from core.services.costs import (
    eval_cost, eval_total_cost, group_cost, group_cost_gradient, group_cost_hessian,
    own_cost_derivative, social_cost, social_cost_batch, social_cost_gradient, user_costs,
)


def _finite_difference(func, levels, step=1e-6):
    gradient = np.zeros_like(levels)
    for j in range(levels.size):
        up, down = levels.copy(), levels.copy()
        up[j] += step
        down[j] -= step
        gradient[j] = (func(up) - func(down)) / (2 * step)
    return gradient


def _random_model(rng):
    family = rng.integers(5)
    if family == 0:
        a = float(rng.uniform(1.5, 10))
        return SelfDependence(a, int(rng.integers(2, 7)), float(rng.uniform(0.05, 1.0)) * min(a, 1.0))
    if family == 1:
        return TwoClass(float(rng.uniform(1.5, 6)), 0.5, int(rng.integers(2, 5)),
                        int(rng.integers(1, 4)), float(rng.uniform(0.01, 0.4)))
    if family == 2:
        return Dominant(float(rng.uniform(1.5, 8)), int(rng.integers(2, 7)), float(rng.uniform(0.1, 0.9)))
    if family == 3:
        return Star(int(rng.integers(2, 7)), float(rng.uniform(0.2, 2.0)),
                    "reciprocal" if rng.random() < 0.5 else "exp")
    return WeakestLink(int(rng.integers(2, 7)), float(rng.uniform(0.3, 3.0)), float(rng.uniform(0.2, 2.0)))


class TestEvalCost:
    def test_self_dependence_uniform(self, selfdep):
        x = InvestmentProfile.uniform(6, 0.180537)
        cost = eval_cost(0, x, selfdep)
        assert cost.investment_cost == pytest.approx(0.180537)
        assert cost.total == pytest.approx(0.247203, abs=1e-6)
        assert eval_total_cost(0, x, np.zeros(6), selfdep) == pytest.approx(0.247203, abs=1e-6)

    def test_zero_investment_exp_risk_is_one(self, dominant):
        assert eval_cost(3, np.zeros(10), dominant).total == pytest.approx(1.0)

    def test_weakest_link_uniform(self, weakest_link):
        x = np.full(4, np.log(4))
        assert eval_cost(2, x, weakest_link).total == pytest.approx(2.386294, abs=1e-6)

    def test_tax_is_added(self, selfdep):
        taxes = TaxProfile([0.5, -0.1, -0.1, -0.1, -0.1, -0.1], Mechanism.EXTERNALITY)
        base = eval_cost(0, np.zeros(6), selfdep).total
        assert eval_total_cost(0, np.zeros(6), taxes, selfdep) == pytest.approx(base + 0.5)

    def test_social_cost_is_sum_of_users(self, two_class, rng):
        x = rng.uniform(0, 1, two_class.n_users)
        assert social_cost(x, two_class) == pytest.approx(user_costs(x, two_class).sum())
        assert group_cost(x, two_class, [8, 9]) == pytest.approx(user_costs(x, two_class)[8:].sum())

    def test_reciprocal_undefined_at_zero(self):
        with pytest.raises(InvalidInputError):
            social_cost(np.zeros(3), Star(3, 1, "reciprocal"))

    @pytest.mark.parametrize("bad", [lambda m: eval_cost(6, np.zeros(6), m),
                                     lambda m: eval_cost(0, np.zeros(5), m),
                                     lambda m: eval_total_cost(0, np.zeros(6), [0.0], m)])
    def test_shape_and_index_errors(self, selfdep, bad):
        with pytest.raises(InvalidInputError):
            bad(selfdep)


class TestGradients:
    def test_vanishes_at_self_dependence_optimum(self, selfdep):
        x = np.full(6, np.log(15) / 15)
        assert np.allclose(social_cost_gradient(x, selfdep), 0.0, atol=1e-12)

    def test_star_root_investment(self, star):
        x = np.zeros(10)
        x[0] = np.log(10)
        gradient = social_cost_gradient(x, star)
        assert gradient[0] == pytest.approx(0.0, abs=1e-12)
        assert np.allclose(gradient[1:], 0.8)

    def test_matches_finite_differences(self, rng):
        for _ in range(100):
            model = _random_model(rng)
            x = rng.uniform(0.1, 2.0, model.n_users)
            members = sorted(rng.choice(model.n_users, size=int(rng.integers(1, model.n_users + 1)),
                                        replace=False).tolist())
            analytic = group_cost_gradient(x, model, members)
            numeric = _finite_difference(lambda y: group_cost(y, model, members), x)
            scale = np.maximum(1.0, np.abs(numeric))
            assert np.all(np.abs(analytic - numeric) / scale < 1e-4), model.describe()

    def test_own_derivative(self, dominant, rng):
        x = rng.uniform(0, 1, 10)
        assert own_cost_derivative(4, x, dominant) == pytest.approx(
            group_cost_gradient(x, dominant, [4])[4], rel=1e-12)

    def test_hessian_is_positive_semidefinite(self, two_class, rng):
        hessian = group_cost_hessian(rng.uniform(0, 1, 10), two_class)
        assert np.allclose(hessian, hessian.T)
        assert np.min(np.linalg.eigvalsh(hessian)) >= -1e-10

    def test_hessian_rejects_weakest_link(self, weakest_link):
        with pytest.raises(InvalidInputError):
            group_cost_hessian(np.zeros(4), weakest_link)


class TestBatch:
    @pytest.mark.parametrize("model", [SelfDependence(10, 3, 1), Dominant(5, 3, 0.45),
                                       Star(3, 1, "reciprocal"), WeakestLink(3, 2, 0.5)])
    def test_matches_pointwise(self, model, rng):
        points = rng.uniform(0.05, 2, (20, 3))
        expected = [social_cost(p, model) for p in points]
        assert np.allclose(social_cost_batch(points, model), expected, rtol=1e-12)

    def test_reciprocal_infeasible_is_infinite(self):
        with np.errstate(divide="ignore"):
            values = social_cost_batch(np.zeros((1, 3)), Star(3, 1, "reciprocal"))
        assert np.isinf(values[0])
