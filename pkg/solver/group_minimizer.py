"""
Group Cost Minimizer

Minimises the summed cost of a group of users over their non-negative
investments while every other coordinate stays fixed. Projected gradient
descent with backtracking drives the iterate close to the optimum, then
Newton steps on the free set finish it off.
"""

from typing import Iterable, Optional

import numpy as np

from core.config import LabConfig, default_config
from core.domain.game_model import LinearAggregateModel
from core.domain.profiles import InvestmentProfile
from core.errors import InvalidInputError, SolverFailureError
from core.logger import logger
from core.services.costs import group_cost, group_cost_gradient, group_cost_hessian
from solver.kkt import certificate_from_gradient
from solver.types import SolverResult

_NEWTON_THRESHOLD = 1e-3
_MIN_STEP = 1e-20


class GroupMinimizer:
    """
    Projected-gradient / Newton minimiser of a group's summed cost.

    Example:
        >>> result = GroupMinimizer(model).minimize()
        >>> result.certificate.is_valid
        True
    """

    def __init__(self, model: LinearAggregateModel, members: Optional[Iterable[int]] = None,
                 config: Optional[LabConfig] = None):
        if not isinstance(model, LinearAggregateModel):
            raise InvalidInputError("group minimisation needs a linear-aggregate model")
        self.model = model
        self.members = (tuple(range(model.n_users)) if members is None
                        else tuple(sorted(set(members))))
        self._index = np.array(self.members, dtype=int)
        self.config = config or default_config()

    def _objective(self, levels: np.ndarray) -> float:
        return group_cost(levels, self.model, self.members)

    def _gradient(self, levels: np.ndarray) -> np.ndarray:
        return group_cost_gradient(levels, self.model, self.members)[self._index]

    def _projected_gradient_norm(self, levels: np.ndarray, gradient: np.ndarray) -> float:
        own = levels[self._index]
        return float(np.linalg.norm(own - np.maximum(own - gradient, 0.0)))

    def _newton_candidate(self, levels: np.ndarray, gradient: np.ndarray,
                          pg_norm: float) -> Optional[np.ndarray]:
        own = levels[self._index]
        free = (own > 0) | (gradient < 0)
        if not np.any(free):
            return None
        hessian = group_cost_hessian(levels, self.model, self.members)
        free_index = self._index[free]
        block = hessian[np.ix_(free_index, free_index)]
        try:
            direction = np.linalg.solve(block, -gradient[free])
        except np.linalg.LinAlgError:
            direction = np.linalg.lstsq(block, -gradient[free], rcond=None)[0]

        step = 1.0
        for _ in range(40):
            trial = levels.copy()
            trial[free_index] = np.maximum(levels[free_index] + step * direction, 0.0)
            if self._projected_gradient_norm(trial, self._gradient(trial)) < pg_norm:
                return trial
            step *= 0.5
        return None

    def _gradient_step(self, levels: np.ndarray, gradient: np.ndarray, step: float):
        base = self._objective(levels)
        while step > _MIN_STEP:
            trial = levels.copy()
            trial[self._index] = np.maximum(levels[self._index] - step * gradient, 0.0)
            move = trial[self._index] - levels[self._index]
            bound = base + gradient @ move + (move @ move) / (2.0 * step)
            if self._objective(trial) <= bound + 1e-15 * abs(base):
                return trial, step
            step *= 0.5
        raise SolverFailureError("projected gradient line search collapsed",
                                 {"objective": base, "step": step})

    def minimize(self, start: Optional[np.ndarray] = None) -> SolverResult:
        """
        Minimise from `start` (zeros by default); non-members keep their start values.

        Raises:
            SolverFailureError: If the projected-gradient norm stays above
                pgd_tolerance after pgd_max_iterations
        """
        levels = (np.zeros(self.model.n_users) if start is None
                  else np.array(start, dtype=float))
        levels[self._index] = np.maximum(levels[self._index], 0.0)
        step = 1.0
        pg_norm = np.inf

        for iteration in range(self.config.pgd_max_iterations):
            gradient = self._gradient(levels)
            pg_norm = self._projected_gradient_norm(levels, gradient)
            if pg_norm <= self.config.pgd_tolerance:
                break
            if pg_norm < _NEWTON_THRESHOLD:
                candidate = self._newton_candidate(levels, gradient, pg_norm)
                if candidate is not None:
                    levels = candidate
                    continue
            levels, step = self._gradient_step(levels, gradient, step)
            step *= 2.0
        else:
            logger.solver('MINIMIZER', 'Iteration budget exhausted', {
                'members': list(self.members), 'projected_gradient_norm': pg_norm,
            })
            raise SolverFailureError(
                "projected gradient did not converge",
                {"projected_gradient_norm": pg_norm,
                 "iterations": self.config.pgd_max_iterations},
            )

        certificate = certificate_from_gradient(
            group_cost_gradient(levels, self.model, self.members), levels, self.members, self.config,
        )
        return SolverResult(InvestmentProfile(levels), certificate, iteration)
