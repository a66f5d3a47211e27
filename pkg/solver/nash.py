"""
Nash Equilibrium

Profiles where no user can lower its own cost g_i by changing x_i alone.

For linear-aggregate families the equilibrium conditions form a linear
complementarity system: x >= 0, (A x)_i >= theta_i and x_i ((A x)_i - theta_i) = 0,
where theta_i is the aggregate effort at which user i's own marginal risk
reduction A_ii * (-f'(z)) equals c_i.
"""

import itertools
import math
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from core.config import LabConfig, default_config
from core.domain.game_model import (
    Dominant, GameModel, GeneralWTE, LinearAggregateModel, SelfDependence, UserBlock, WeakestLink,
)
from core.domain.profiles import InvestmentProfile
from core.errors import InvalidInputError, SolverFailureError
from core.logger import logger
from core.services.costs import own_cost_derivative

_CONDITION_TOLERANCE = 1e-9


def _thresholds(model: LinearAggregateModel) -> np.ndarray:
    matrix, costs = model.influence_matrix(), model.unit_costs()
    return np.array([model.risk_kind.stationary_level(matrix[i, i], costs[i])
                     for i in range(model.n_users)])


def is_nash_equilibrium(model: GameModel, x, tolerance: float = 1e-8) -> bool:
    """True when every user's own first-order condition holds at x."""
    levels = x.levels if isinstance(x, InvestmentProfile) else np.asarray(x, dtype=float)
    for i in range(model.n_users):
        derivative = own_cost_derivative(i, levels, model)
        if levels[i] > 0 and abs(derivative) > tolerance:
            return False
        if levels[i] == 0 and derivative < -tolerance:
            return False
    return True


def _satisfies_complementarity(model: LinearAggregateModel, levels: np.ndarray,
                               thresholds: np.ndarray) -> bool:
    if np.any(levels < 0):
        return False
    z = model.influence_matrix() @ levels
    scale = np.maximum(1.0, np.abs(thresholds))
    gap = (z - thresholds) / scale
    active = levels > 0
    return bool(np.all(gap[~active] >= -_CONDITION_TOLERANCE)
                and np.all(np.abs(gap[active]) <= _CONDITION_TOLERANCE))


def _block_supports(blocks: Sequence[UserBlock]) -> Iterator[Tuple[int, ...]]:
    """Subsets of block indices, smaller supports first."""
    indices = range(len(blocks))
    for size in range(len(blocks) + 1):
        yield from itertools.combinations(indices, size)


def block_symmetric_equilibria(model: LinearAggregateModel,
                               blocks: Optional[Sequence[UserBlock]] = None) -> List[InvestmentProfile]:
    """
    Every equilibrium in which users of a block invest the same amount.

    For each set of investing blocks the reduced linear system over one
    representative per block is solved and the full complementarity
    conditions are checked.
    """
    blocks = list(blocks or model.blocks())
    matrix = model.influence_matrix()
    thresholds = _thresholds(model)
    found: List[InvestmentProfile] = []

    for support in _block_supports(blocks):
        levels = np.zeros(model.n_users)
        if support:
            reduced = np.array([
                [matrix[blocks[p].representative, list(blocks[q].members)].sum() for q in support]
                for p in support
            ])
            rhs = np.array([thresholds[blocks[p].representative] for p in support])
            try:
                amounts = np.linalg.solve(reduced, rhs)
            except np.linalg.LinAlgError:
                continue
            if np.any(amounts <= 0):
                continue
            for p, amount in zip(support, amounts):
                levels[list(blocks[p].members)] = amount
        if _satisfies_complementarity(model, levels, thresholds):
            found.append(InvestmentProfile(levels))
    return found


def best_response(model: LinearAggregateModel, levels: np.ndarray, i: int,
                  thresholds: Optional[np.ndarray] = None) -> float:
    """Level of x_i minimising g_i with every other coordinate of `levels` fixed."""
    if thresholds is None:
        thresholds = _thresholds(model)
    row = model.influence_matrix()[i]
    others = row @ levels - row[i] * levels[i]
    return max(0.0, (thresholds[i] - others) / row[i])


def iterated_best_response(model: LinearAggregateModel,
                           config: Optional[LabConfig] = None) -> Optional[InvestmentProfile]:
    """Gauss-Seidel best-response dynamics from zero; None when it does not settle."""
    config = config or default_config()
    thresholds = _thresholds(model)
    levels = np.zeros(model.n_users)
    for _ in range(config.best_response_max_iterations):
        largest_move = 0.0
        for i in range(model.n_users):
            response = best_response(model, levels, i, thresholds)
            largest_move = max(largest_move, abs(response - levels[i]))
            levels[i] = response
        if largest_move <= 1e-13:
            return InvestmentProfile(levels)
    return None


def nash_equilibria(model: GameModel, config: Optional[LabConfig] = None) -> List[InvestmentProfile]:
    """
    Equilibria of the model, in deterministic order.

    SelfDependence, Dominant and WeakestLink return their closed-form
    symmetric equilibrium; TwoClass and Star every block-symmetric one;
    GeneralWTE the best-response limit, or all equilibria by support
    enumeration when the dynamics cycle.

    Raises:
        SolverFailureError: If no equilibrium is found
    """
    config = config or default_config()
    n = model.n_users

    if isinstance(model, SelfDependence):
        return [InvestmentProfile.uniform(n, math.log(model.a / model.c) / (model.a + n - 1))]
    if isinstance(model, Dominant):
        return [InvestmentProfile.single(n, 0, math.log(model.a / model.c) / model.a)]
    if isinstance(model, WeakestLink):
        level = (1.0 / model.rho - 1.0) * math.log(n) - math.log(model.c)
        return [InvestmentProfile.uniform(n, level)]
    if not isinstance(model, LinearAggregateModel):
        raise InvalidInputError(f"no Nash solver for {type(model).__name__}")

    if isinstance(model, GeneralWTE):
        limit = iterated_best_response(model, config)
        if limit is not None:
            return [limit]
        if n > config.support_enumeration_max_users:
            raise SolverFailureError(
                "best-response dynamics did not converge and N is too large for support enumeration",
                {"n_users": n, "max_users": config.support_enumeration_max_users},
            )
        logger.solver('NASH', 'Best response cycled, enumerating supports', {'n_users': n})

    equilibria = block_symmetric_equilibria(model)
    if not equilibria:
        raise SolverFailureError("no Nash equilibrium found", {"model": model.describe()})
    if len(equilibria) > 1:
        logger.solver('NASH', 'Multiple equilibria, returning the first', {
            'model': model.describe(), 'count': len(equilibria),
        })
    return equilibria


def nash_equilibrium(model: GameModel, config: Optional[LabConfig] = None) -> InvestmentProfile:
    """First equilibrium of `nash_equilibria`; the baseline for the price of anarchy."""
    return nash_equilibria(model, config)[0]
