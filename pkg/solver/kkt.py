"""
KKT certificates for social optima and exit equilibria.
"""

from typing import Iterable, Optional, Tuple

import numpy as np

from core.config import LabConfig, default_config
from core.domain.game_model import GameModel
from core.services.costs import as_levels, group_cost_gradient, own_cost_derivative
from solver.types import ExitEquilibrium, KktCertificate


def certificate_from_gradient(gradient: np.ndarray, levels: np.ndarray,
                              controlled: Optional[Iterable[int]] = None,
                              config: Optional[LabConfig] = None) -> KktCertificate:
    """
    Certificate for min over x_controlled >= 0 given the objective's gradient.

    Args:
        gradient: Gradient over all coordinates
        levels: Current profile
        controlled: Coordinates the minimiser chooses (default: all)
    """
    config = config or default_config()
    index = np.arange(levels.size) if controlled is None else np.array(sorted(controlled), dtype=int)
    grad = gradient[index]
    multipliers = np.maximum(grad, 0.0)
    return KktCertificate(
        multipliers=multipliers,
        residuals=grad - multipliers,
        support=tuple(int(k) for k in index[levels[index] > 0]),
        slackness=multipliers * levels[index],
        stationarity_tolerance=config.kkt_stationarity_tolerance,
        slackness_tolerance=config.kkt_slackness_tolerance,
    )


def certify(x, model: GameModel, members: Optional[Iterable[int]] = None,
            config: Optional[LabConfig] = None) -> KktCertificate:
    """Certificate of x for the summed cost of `members` (default: everybody)."""
    levels = as_levels(x, model)
    members = None if members is None else tuple(members)
    gradient = group_cost_gradient(levels, model, members)
    return certificate_from_gradient(gradient, levels, members, config)


def outlier_residual(model: GameModel, x, outlier: int) -> float:
    """
    Violation of the outlier's own first-order condition.

    Zero when the outlier invests with zero marginal cost, or abstains with a
    non-negative marginal cost.
    """
    levels = as_levels(x, model)
    derivative = own_cost_derivative(outlier, levels, model)
    if levels[outlier] > 0:
        return abs(derivative)
    return max(-derivative, 0.0)


def verify_exit_equilibrium(model: GameModel, equilibrium: ExitEquilibrium,
                            config: Optional[LabConfig] = None) -> Tuple[float, KktCertificate]:
    """Outlier residual and the participants' group certificate."""
    participants = [j for j in range(model.n_users) if j != equilibrium.outlier]
    levels = equilibrium.profile.levels
    return (outlier_residual(model, levels, equilibrium.outlier),
            certify(levels, model, participants, config))
