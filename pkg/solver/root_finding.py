"""
Scalar root finding on bracketed intervals.
"""

import math
from typing import Callable, List, Optional, Sequence

import numpy as np
from scipy.optimize import bisect

from core.config import LabConfig, default_config
from core.errors import SolverFailureError


def bisect_root(func: Callable[[float], float], lower: float, upper: float,
                config: Optional[LabConfig] = None) -> float:
    """
    Root of `func` on [lower, upper] by bisection.

    Raises:
        SolverFailureError: If the interval does not bracket a sign change
            or the iteration budget runs out
    """
    config = config or default_config()
    f_lower, f_upper = func(lower), func(upper)
    if f_lower == 0:
        return lower
    if f_upper == 0:
        return upper
    if np.sign(f_lower) == np.sign(f_upper):
        raise SolverFailureError(
            "bisection interval does not bracket a root",
            {"lower": lower, "upper": upper, "f_lower": f_lower, "f_upper": f_upper},
        )
    try:
        return float(bisect(func, lower, upper, xtol=config.bisection_xtol,
                            maxiter=config.bisection_max_iterations))
    except RuntimeError as e:
        raise SolverFailureError(f"bisection did not converge: {e}",
                                 {"lower": lower, "upper": upper}) from e


def solve_exponential_sum(coefficients: Sequence[float], rates: Sequence[float], target: float,
                          config: Optional[LabConfig] = None) -> float:
    """
    Smallest u >= 0 with sum_k coefficients[k] * exp(-rates[k] * u) <= target.

    The left-hand side is strictly decreasing, so the result is its unique
    crossing of `target`, or 0 when it already starts below.
    """
    terms = [(float(a), float(r)) for a, r in zip(coefficients, rates) if a > 0]
    if not terms:
        return 0.0

    def excess(u: float) -> float:
        return sum(a * math.exp(-r * u) for a, r in terms) - target

    if excess(0.0) <= 0:
        return 0.0
    largest = max(a for a, _ in terms)
    slowest = min(r for _, r in terms)
    upper = math.log((len(terms) + 1) * largest / target) / slowest
    return bisect_root(excess, 0.0, upper, config)


def bracketed_roots(func: Callable[[float], float], lower: float, upper: float,
                    config: Optional[LabConfig] = None) -> List[float]:
    """
    All roots of `func` on [lower, upper] separated by at least one scan cell.

    The interval is scanned on `root_scan_samples` points and every sign
    change is refined by bisection.
    """
    config = config or default_config()
    if upper <= lower:
        return []
    grid = np.linspace(lower, upper, config.root_scan_samples)
    values = np.array([func(u) for u in grid])
    roots: List[float] = []
    for k in range(grid.size - 1):
        if values[k] == 0:
            roots.append(float(grid[k]))
        elif values[k] * values[k + 1] < 0:
            roots.append(bisect_root(func, float(grid[k]), float(grid[k + 1]), config))
    if values[-1] == 0:
        roots.append(float(grid[-1]))
    return roots


def solve_decreasing(func: Callable[[float], float], target: float,
                     config: Optional[LabConfig] = None) -> float:
    """
    Smallest u >= 0 with func(u) <= target for a decreasing `func`.

    The upper end of the bracket is found by doubling from 1.
    """
    if func(0.0) <= target:
        return 0.0
    upper = 1.0
    while func(upper) > target:
        upper *= 2.0
        if upper > 1e12:
            raise SolverFailureError("no crossing below 1e12", {"target": target})
    return bisect_root(lambda u: func(u) - target, 0.0, upper, config)
