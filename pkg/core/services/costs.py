"""
Cost Evaluation

Pure evaluations of user costs g_i(x) = f_i(x) + c_i x_i, their gradients
and Hessians for every game family. Risks are computed in the log domain and
exponentiated last.
"""

from typing import Iterable, Optional, Sequence, Union

import numpy as np
from scipy.special import logsumexp

from core.domain.game_model import GameModel, LinearAggregateModel, RiskKind, WeakestLink
from core.domain.profiles import CostBreakdown, InvestmentProfile, TaxProfile
from core.errors import InvalidInputError

ProfileLike = Union[InvestmentProfile, Sequence[float], np.ndarray]


def as_levels(x: ProfileLike, model: GameModel) -> np.ndarray:
    """Investment levels as a float vector of the model's dimension."""
    levels = x.levels if isinstance(x, InvestmentProfile) else np.asarray(x, dtype=float)
    if levels.shape != (model.n_users,):
        raise InvalidInputError(
            f"profile has shape {levels.shape}, model {model.describe()} expects ({model.n_users},)"
        )
    return levels


def _check_user(i: int, model: GameModel):
    if not 0 <= i < model.n_users:
        raise InvalidInputError(f"user index {i} out of range for N={model.n_users}")


def _member_mask(model: GameModel, members: Optional[Iterable[int]]) -> np.ndarray:
    mask = np.zeros(model.n_users, dtype=bool)
    if members is None:
        mask[:] = True
    else:
        for i in members:
            _check_user(i, model)
            mask[i] = True
    return mask


def log_risks(x: ProfileLike, model: GameModel) -> np.ndarray:
    """log f_i(x) for every user."""
    levels = as_levels(x, model)
    if isinstance(model, LinearAggregateModel):
        return model.risk_kind.log_value(model.influence_matrix() @ levels)
    if isinstance(model, WeakestLink):
        soft_min = logsumexp(-model.rho * levels) / model.rho
        return np.full(model.n_users, soft_min)
    raise InvalidInputError(f"unsupported model {type(model).__name__}")


def risks(x: ProfileLike, model: GameModel) -> np.ndarray:
    log_values = log_risks(x, model)
    if np.any(np.isinf(log_values)):
        raise InvalidInputError("reciprocal risk is undefined at zero aggregate effort")
    return np.exp(log_values)


def user_costs(x: ProfileLike, model: GameModel) -> np.ndarray:
    """Vector of g_i(x)."""
    levels = as_levels(x, model)
    return risks(levels, model) + model.unit_costs() * levels


def eval_cost(i: int, x: ProfileLike, model: GameModel) -> CostBreakdown:
    """Risk and investment cost of user i at profile x."""
    _check_user(i, model)
    levels = as_levels(x, model)
    return CostBreakdown(
        risk=float(risks(levels, model)[i]),
        investment_cost=float(model.unit_costs()[i] * levels[i]),
    )


def eval_total_cost(i: int, x: ProfileLike, taxes: Union[TaxProfile, Sequence[float], np.ndarray],
                    model: GameModel) -> float:
    """g_i(x) + t_i."""
    tax_vector = taxes.taxes if isinstance(taxes, TaxProfile) else np.asarray(taxes, dtype=float)
    if tax_vector.shape != (model.n_users,):
        raise InvalidInputError(f"tax profile has shape {tax_vector.shape}, expected ({model.n_users},)")
    cost = eval_cost(i, x, model)
    return CostBreakdown(cost.risk, cost.investment_cost, float(tax_vector[i])).total


def social_cost(x: ProfileLike, model: GameModel) -> float:
    return float(np.sum(user_costs(x, model)))


def group_cost(x: ProfileLike, model: GameModel, members: Iterable[int]) -> float:
    return float(np.sum(user_costs(x, model)[_member_mask(model, members)]))


def risk_sensitivities(x: ProfileLike, model: GameModel) -> np.ndarray:
    """Matrix J with J[i, j] = d f_i / d x_j, computed analytically."""
    levels = as_levels(x, model)
    if isinstance(model, LinearAggregateModel):
        z = model.influence_matrix() @ levels
        if model.risk_kind is RiskKind.RECIPROCAL and np.any(z <= 0):
            raise InvalidInputError("reciprocal risk is undefined at zero aggregate effort")
        return model.risk_kind.derivative(z)[:, None] * model.influence_matrix()
    if isinstance(model, WeakestLink):
        rho = model.rho
        lse = logsumexp(-rho * levels)
        row = -np.exp(-rho * levels + (1.0 / rho - 1.0) * lse)
        return np.tile(row, (model.n_users, 1))
    raise InvalidInputError(f"unsupported model {type(model).__name__}")


def group_cost_gradient(x: ProfileLike, model: GameModel,
                        members: Optional[Iterable[int]] = None) -> np.ndarray:
    """
    Gradient over all coordinates of the summed cost of `members`.

    Coordinates outside the group still carry the group's risk derivative;
    only members pay their own investment cost.
    """
    mask = _member_mask(model, members)
    sensitivities = risk_sensitivities(x, model)
    return sensitivities[mask].sum(axis=0) + model.unit_costs() * mask


def social_cost_gradient(x: ProfileLike, model: GameModel) -> np.ndarray:
    """Gradient of sum_i g_i(x)."""
    return group_cost_gradient(x, model, None)


def own_cost_derivative(i: int, x: ProfileLike, model: GameModel) -> float:
    """d g_i / d x_i."""
    _check_user(i, model)
    return float(risk_sensitivities(x, model)[i, i] + model.unit_costs()[i])


def group_cost_hessian(x: ProfileLike, model: LinearAggregateModel,
                       members: Optional[Iterable[int]] = None) -> np.ndarray:
    """Hessian of the group cost for linear-aggregate models: A_M^T diag(f''(z_M)) A_M."""
    if not isinstance(model, LinearAggregateModel):
        raise InvalidInputError("Hessian is only available for linear-aggregate models")
    levels = as_levels(x, model)
    rows = model.influence_matrix()[_member_mask(model, members)]
    curvature = model.risk_kind.second_derivative(rows @ levels)
    return rows.T @ (curvature[:, None] * rows)


def social_cost_batch(points: np.ndarray, model: GameModel) -> np.ndarray:
    """
    Social cost of many profiles at once.

    Args:
        points: (M, N) array of profiles

    Returns:
        Length-M vector; infeasible reciprocal profiles evaluate to +inf.
    """
    points = np.asarray(points, dtype=float)
    investment = points @ model.unit_costs()
    if isinstance(model, LinearAggregateModel):
        z = points @ model.influence_matrix().T
        return np.exp(model.risk_kind.log_value(z)).sum(axis=1) + investment
    if isinstance(model, WeakestLink):
        soft_min = logsumexp(-model.rho * points, axis=1) / model.rho
        return model.n_users * np.exp(soft_min) + investment
    raise InvalidInputError(f"unsupported model {type(model).__name__}")
