"""
Brute-force social optimum on a uniform grid, used to cross-check the solvers.
"""

import warnings
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Tuple

import numpy as np

from core.config import LabConfig
from core.domain.game_model import GameModel
from core.domain.profiles import InvestmentProfile
from core.errors import InvalidInputError, OracleResolutionWarning
from core.logger import logger
from core.services.costs import social_cost_batch
from solver.social_optimum import social_optimum

MAX_USERS = 4
MIN_STEPS = 50


def _chunk_minimum(task: Tuple[GameModel, np.ndarray, int]) -> Tuple[float, int]:
    """Lowest social cost over the slice x_0 = grid[first] and its flat index within the slice."""
    model, grid, first = task
    rest = model.n_users - 1
    if rest:
        mesh = np.stack(np.meshgrid(*([grid] * rest), indexing='ij'), axis=-1).reshape(-1, rest)
    else:
        mesh = np.empty((1, 0))
    points = np.hstack([np.full((mesh.shape[0], 1), grid[first]), mesh])
    with np.errstate(divide='ignore', over='ignore'):
        values = social_cost_batch(points, model)
    best = int(np.argmin(values))
    return float(values[best]), best


def brute_force_social_optimum(model: GameModel, grid_bound: float, grid_steps: int,
                               reference: Optional[InvestmentProfile] = None,
                               workers: int = 1,
                               config: Optional[LabConfig] = None) -> InvestmentProfile:
    """
    Grid minimiser of the social cost over [0, grid_bound]^N.

    Ties resolve to the lowest lexicographic grid index regardless of the
    number of workers.

    Args:
        model: Model with at most four users
        grid_bound: Upper end of every coordinate's range
        grid_steps: Points per coordinate, at least 50
        reference: Optimum the grid should contain; the solver's when omitted
        workers: Processes evaluating slices of the first coordinate

    Raises:
        InvalidInputError: If the model is too large or the grid too coarse
    """
    n = model.n_users
    if n > MAX_USERS:
        raise InvalidInputError(f"brute-force oracle supports at most {MAX_USERS} users, got {n}")
    if int(grid_steps) != grid_steps or grid_steps < MIN_STEPS:
        raise InvalidInputError(f"grid_steps must be an integer >= {MIN_STEPS}, got {grid_steps}")
    if not grid_bound > 0 or not np.isfinite(grid_bound):
        raise InvalidInputError(f"grid_bound must be positive and finite, got {grid_bound}")
    if workers < 1:
        raise InvalidInputError(f"workers must be at least 1, got {workers}")

    grid = np.linspace(0.0, float(grid_bound), int(grid_steps))
    cell = grid[1] - grid[0]
    if reference is None:
        reference, _ = social_optimum(model, config)
    if np.max(reference.levels) > grid_bound + cell:
        warnings.warn(
            f"optimum {reference.as_list()} lies beyond the grid bound {grid_bound}",
            OracleResolutionWarning,
        )

    tasks = [(model, grid, first) for first in range(grid.size)]
    if workers == 1:
        results = list(map(_chunk_minimum, tasks))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_chunk_minimum, tasks))

    best_first, (best_value, best_index) = 0, results[0]
    for first, (value, index) in enumerate(results):
        if value < best_value:
            best_first, best_value, best_index = first, value, index

    rest = np.unravel_index(best_index, (grid.size,) * (n - 1)) if n > 1 else ()
    levels = np.array([grid[best_first]] + [grid[k] for k in rest])
    distance = float(np.max(np.abs(levels - reference.levels)))
    logger.debug('ORACLE', 'Grid optimum', {
        'model': model.describe(), 'x': levels, 'value': best_value, 'steps': grid.size,
        'distance': distance,
    })
    if distance > cell * (1 + 1e-9):
        warnings.warn(
            f"grid optimum {levels.tolist()} is {distance:.3g} from the reference, more than one cell ({cell:.3g})",
            OracleResolutionWarning,
        )
    return InvestmentProfile(levels)
