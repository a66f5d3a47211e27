"""
Social Optimum

Minimiser x* of the summed cost sum_i g_i(x) over x >= 0, in closed form
where the family admits one and numerically otherwise. Every optimum is
returned together with its KKT certificate.
"""

import math
from typing import Callable, Dict, Optional, Tuple, Type

import numpy as np

from core.config import LabConfig, default_config
from core.domain.game_model import (
    Dominant, GameModel, GeneralWTE, SelfDependence, Star, TwoClass, WeakestLink,
)
from core.domain.profiles import InvestmentProfile
from core.errors import InvalidInputError, SolverFailureError
from core.logger import logger
from solver.group_minimizer import GroupMinimizer
from solver.kkt import certify
from solver.root_finding import solve_exponential_sum
from solver.types import KktCertificate


def _self_dependence(model: SelfDependence, config: LabConfig) -> np.ndarray:
    weight = model.a + model.n - 1
    return np.full(model.n_users, math.log(weight / model.c) / weight)


def _two_class(model: TwoClass, config: LabConfig) -> np.ndarray:
    # Reliant users never invest at the optimum; the self-dependent level
    # balances their own and the reliant class's marginal risk reduction.
    own_weight = model.a1 + model.n1 - 1
    level = solve_exponential_sum([own_weight, model.n2], [own_weight, model.n1], model.c, config)
    levels = np.zeros(model.n_users)
    levels[:model.n1] = level
    return levels


def _dominant(model: Dominant, config: LabConfig) -> np.ndarray:
    levels = np.zeros(model.n_users)
    levels[0] = math.log(model.a * model.n / model.c) / model.a
    return levels


def _star(model: Star, config: LabConfig) -> np.ndarray:
    levels = np.zeros(model.n_users)
    levels[0] = max(0.0, model.risk_kind.stationary_level(model.n, model.c))
    return levels


def _weakest_link(model: WeakestLink, config: LabConfig) -> np.ndarray:
    level = math.log(model.n / model.c ** model.rho) / model.rho
    return np.full(model.n_users, max(0.0, level))


def _general_wte(model: GeneralWTE, config: LabConfig) -> np.ndarray:
    return GroupMinimizer(model, None, config).minimize().profile.levels.copy()


_SOLVERS: Dict[Type[GameModel], Callable[[GameModel, LabConfig], np.ndarray]] = {
    SelfDependence: _self_dependence,
    TwoClass: _two_class,
    Dominant: _dominant,
    Star: _star,
    WeakestLink: _weakest_link,
    GeneralWTE: _general_wte,
}


def social_optimum(model: GameModel,
                   config: Optional[LabConfig] = None) -> Tuple[InvestmentProfile, KktCertificate]:
    """
    Socially optimal investment profile and its optimality certificate.

    Args:
        model: Any supported game model
        config: Tolerances (default configuration when omitted)

    Returns:
        (x*, certificate)

    Raises:
        SolverFailureError: If the numerical solver does not converge or the
            certificate of the result is not valid
    """
    config = config or default_config()
    solver = _SOLVERS.get(type(model))
    if solver is None:
        raise InvalidInputError(f"no social optimum solver for {type(model).__name__}")

    profile = InvestmentProfile(solver(model, config))
    certificate = certify(profile, model, None, config)
    if not certificate.is_valid:
        logger.solver('SOLVER', 'Social optimum failed its KKT check', {
            'model': model.describe(), 'certificate': certificate.to_dict(),
        })
        raise SolverFailureError("social optimum failed its KKT check", certificate.to_dict())

    logger.debug('SOLVER', 'Social optimum', {'model': model.describe(), 'x': profile.as_list()})
    return profile, certificate
