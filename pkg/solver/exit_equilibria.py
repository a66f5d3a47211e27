"""
Exit Equilibria

When user `outlier` leaves a mechanism it best-responds on its own, while the
remaining participants jointly minimise their summed cost. An exit
equilibrium is a profile where neither side wants to move.

Each family enumerates the possible support patterns (does the outlier
invest? do the participants?), solves the first-order system of every
pattern and keeps the solutions whose inequality conditions hold. Outcomes
where the outlier free-rides come first, outcomes where it invests last.
Exactly at a condition boundary the outlier-invests pattern wins.
"""

import math
from typing import Callable, Dict, List, Optional, Type

import numpy as np

from core.config import LabConfig, default_config
from core.domain.game_model import (
    Dominant, GameModel, GeneralWTE, SelfDependence, Star, TwoClass, WeakestLink,
)
from core.errors import ConsistencyError, InvalidInputError, SolverFailureError
from core.logger import logger
from solver.group_minimizer import GroupMinimizer
from solver.kkt import verify_exit_equilibrium
from solver.nash import best_response
from solver.root_finding import bisect_root, bracketed_roots, solve_decreasing, solve_exponential_sum
from solver.types import ExitEquilibrium

_DUPLICATE_TOLERANCE = 1e-9
_CORNER_TOLERANCE = 1e-12


def _levels(model: GameModel, outlier: int, outlier_level: float,
            participant_levels: Dict[int, float]) -> np.ndarray:
    levels = np.zeros(model.n_users)
    levels[outlier] = outlier_level
    for user, level in participant_levels.items():
        levels[user] = level
    return levels


def _self_dependence(model: SelfDependence, outlier: int,
                     config: LabConfig) -> List[ExitEquilibrium]:
    a, n, c = model.a, model.n, model.c
    participants = [j for j in range(n) if j != outlier]
    gain = math.log(a / c)
    spread = math.log1p((n - 2) / a)
    found: List[ExitEquilibrium] = []

    # Outlier free-rides on participants that all invest.
    if (n - 1) * spread > (a - 1) * gain:
        level = math.log((a + n - 2) / c) / (a + n - 2)
        found.append(ExitEquilibrium.from_levels(
            outlier, _levels(model, outlier, 0.0, {j: level for j in participants}),
            "gamma" if a < 1 else "alpha",
        ))

    # Participants free-ride on the outlier.
    if a * spread <= (1 - a) * gain:
        found.append(ExitEquilibrium.from_levels(
            outlier, _levels(model, outlier, gain / a, {}), "omega",
        ))

    # Everybody invests.
    if a != 1:
        denominator = (a - 1) * (a + n - 1)
        outlier_level = ((a - 1) * gain - (n - 1) * spread) / denominator
        participant_level = ((a - 1) * gain + a * spread) / denominator
        if outlier_level >= 0 and participant_level > 0:
            found.append(ExitEquilibrium.from_levels(
                outlier, _levels(model, outlier, outlier_level,
                                 {j: participant_level for j in participants}),
                "zeta" if a < 1 else "beta",
            ))
    return found


def _dominant(model: Dominant, outlier: int, config: LabConfig) -> List[ExitEquilibrium]:
    a, n, c = model.a, model.n, model.c
    if outlier != 0:
        level = math.log(a * (n - 1) / c) / a
        return [ExitEquilibrium.from_levels(
            outlier, _levels(model, outlier, 0.0, {0: level}), "non-dominant-outlier",
        )]
    if a < n - 1:
        level = math.log((n - 1) / c) / (n - 1)
        return [ExitEquilibrium.from_levels(
            outlier, _levels(model, outlier, 0.0, {j: level for j in range(1, n)}), "dominant-alpha",
        )]
    return [ExitEquilibrium.from_levels(
        outlier, _levels(model, outlier, math.log(a / c) / a, {}), "dominant-beta",
    )]


def _star(model: Star, outlier: int, config: LabConfig) -> List[ExitEquilibrium]:
    kind, n, c = model.risk_kind, model.n, model.c
    if outlier == 0:
        # Root and every leaf aim for the same total protection level on their own risk.
        level = max(0.0, kind.stationary_level(1.0, c))
        found = [ExitEquilibrium.from_levels(outlier, _levels(model, 0, level, {}), "root-exit")]
        if level > 0:
            leaves = {j: level for j in range(1, n)}
            found.insert(0, ExitEquilibrium.from_levels(
                outlier, _levels(model, 0, 0.0, leaves), "root-free-rides"))
        return found
    level = max(0.0, kind.stationary_level(n - 1.0, c))
    return [ExitEquilibrium.from_levels(outlier, _levels(model, outlier, 0.0, {0: level}), "leaf-exit")]


class _WeakestLinkSystem:
    """First-order conditions of a weakest-link exit with symmetric participants."""

    def __init__(self, model: WeakestLink):
        self.rho = model.rho
        self.c = model.c
        self.others = model.n - 1

    def _log_sum(self, x: float, y: float) -> float:
        return float(np.logaddexp(-self.rho * x, math.log(self.others) - self.rho * y))

    def outlier_pull(self, x: float, y: float) -> float:
        """Marginal risk reduction of the outlier's own investment."""
        return math.exp(-self.rho * x + (1 / self.rho - 1) * self._log_sum(x, y))

    def group_pull(self, x: float, y: float) -> float:
        """Marginal reduction of the participants' summed risk per participant coordinate."""
        return math.exp(math.log(self.others) - self.rho * y + (1 / self.rho - 1) * self._log_sum(x, y))


def _weakest_link(model: WeakestLink, outlier: int, config: LabConfig) -> List[ExitEquilibrium]:
    rho, c, n = model.rho, model.c, model.n
    system = _WeakestLinkSystem(model)
    participants = [j for j in range(n) if j != outlier]
    found: List[ExitEquilibrium] = []

    def add(outlier_level: float, participant_level: float, label: str):
        found.append(ExitEquilibrium.from_levels(
            outlier, _levels(model, outlier, outlier_level,
                             {j: participant_level for j in participants}), label,
        ))

    # Outlier abstains.
    level = solve_decreasing(lambda y: system.group_pull(0.0, y), c, config)
    if level > 0 and system.outlier_pull(0.0, level) <= c + _CORNER_TOLERANCE:
        add(0.0, level, "outlier-free-rides")

    # Nobody invests.
    if (system.outlier_pull(0.0, 0.0) <= c + _CORNER_TOLERANCE
            and system.group_pull(0.0, 0.0) <= c + _CORNER_TOLERANCE):
        add(0.0, 0.0, "nobody-invests")

    # Outlier invests alone.
    level = solve_decreasing(lambda x: system.outlier_pull(x, 0.0), c, config)
    if level > 0 and system.group_pull(level, 0.0) <= c + _CORNER_TOLERANCE:
        add(level, 0.0, "outlier-invests-alone")

    # Everybody invests: the outlier ends up carrying half of the aggregate risk term.
    base = (1 - rho) * math.log(2) - rho * math.log(c)
    outlier_level = base / rho
    participant_level = (base + math.log(n - 1)) / rho
    if outlier_level >= 0 and participant_level > 0:
        add(outlier_level, participant_level, "both-invest")
    return found


def _two_class(model: TwoClass, outlier: int, config: LabConfig) -> List[ExitEquilibrium]:
    if outlier < model.n1:
        candidates = _two_class_self_dependent_outlier(model, outlier, config)
    else:
        candidates = _two_class_reliant_outlier(model, outlier, config)

    accepted = []
    for candidate in candidates:
        residual, certificate = verify_exit_equilibrium(model, candidate, config)
        if residual <= config.kkt_stationarity_tolerance and certificate.is_valid:
            accepted.append(candidate)
        else:
            logger.solver('EXIT', 'Dropping inconsistent two-class candidate', {
                'case': candidate.case_label, 'outlier_residual': residual,
                'certificate': certificate.to_dict(),
            })
    return accepted


def _two_class_self_dependent_outlier(model: TwoClass, outlier: int,
                                      config: LabConfig) -> List[ExitEquilibrium]:
    a1, n1, n2, c = model.a1, model.n1, model.n2, model.c
    peers = [j for j in range(n1) if j != outlier]
    own_weight = a1 + n1 - 2
    gain = math.log(a1 / c)

    free_ride_side = np.logaddexp(
        math.log(own_weight) + (a1 - 1) / (n1 - 1) * math.log(c / a1), math.log(n2),
    )
    if free_ride_side >= math.log(a1):
        level = solve_exponential_sum([own_weight, n2], [own_weight, n1 - 1], c, config)
        return [ExitEquilibrium.from_levels(
            outlier, _levels(model, outlier, 0.0, {j: level for j in peers}),
            "self-dependent-free-rides",
        )]

    # The outlier's condition a1 x + (n1 - 1) y = log(a1/c) ties the peers' level to x.
    def peer_level(x: float) -> float:
        return (gain - a1 * x) / (n1 - 1)

    def excess(x: float) -> float:
        y = peer_level(x)
        return (own_weight * math.exp(-x - own_weight * y)
                + n2 * math.exp(-x - (n1 - 1) * y) - c)

    x = bisect_root(excess, 0.0, gain / a1, config)
    return [ExitEquilibrium.from_levels(
        outlier, _levels(model, outlier, x, {j: peer_level(x) for j in peers}),
        "self-dependent-invests",
    )]


def _two_class_reliant_outlier(model: TwoClass, outlier: int,
                               config: LabConfig) -> List[ExitEquilibrium]:
    a1, a2, n1, n2, c = model.a1, model.a2, model.n1, model.n2, model.c
    n = n1 + n2
    self_dependent = list(range(n1))
    class_weight = a1 + n1 - 1
    gain = math.log(a2 / c)
    found: List[ExitEquilibrium] = []

    level = solve_exponential_sum([class_weight, n2 - 1], [class_weight, n1], c, config)
    if a2 * math.exp(-n1 * level) <= c:
        found.append(ExitEquilibrium.from_levels(
            outlier, _levels(model, outlier, 0.0, {j: level for j in self_dependent}),
            "reliant-free-rides",
        ))

    if math.log(a1 + n - 2) - math.log(c) <= gain / a2:
        found.append(ExitEquilibrium.from_levels(
            outlier, _levels(model, outlier, gain / a2, {}), "reliant-invests",
        ))

    # Interior: a2 x + n1 y = log(a2/c) ties the self-dependent level to x.
    def class_level(x: float) -> float:
        return (gain - a2 * x) / n1

    def excess(x: float) -> float:
        y = class_level(x)
        return (class_weight * math.exp(-x - class_weight * y)
                + (n2 - 1) * math.exp(-x - n1 * y) - c)

    upper = gain / a2
    for x in bracketed_roots(excess, 0.0, upper, config):
        if 0 < x < upper:
            found.append(ExitEquilibrium.from_levels(
                outlier, _levels(model, outlier, x, {j: class_level(x) for j in self_dependent}),
                "reliant-interior",
            ))
    return found


def _general_wte(model: GeneralWTE, outlier: int, config: LabConfig) -> List[ExitEquilibrium]:
    participants = [j for j in range(model.n_users) if j != outlier]
    minimizer = GroupMinimizer(model, participants, config)
    standalone = best_response(model, np.zeros(model.n_users), outlier)
    found: List[ExitEquilibrium] = []

    for seed in sorted({0.0, standalone}):
        levels = np.zeros(model.n_users)
        levels[outlier] = seed
        for _ in range(config.exit_iteration_limit):
            levels = minimizer.minimize(levels).profile.levels.copy()
            response = best_response(model, levels, outlier)
            if abs(response - levels[outlier]) <= _DUPLICATE_TOLERANCE * 1e-3:
                levels[outlier] = response
                found.append(ExitEquilibrium.from_levels(outlier, levels, "alternating-response",
                                                         {"seed": seed}))
                break
            levels[outlier] = response
        else:
            logger.solver('EXIT', 'Alternating responses did not settle', {
                'outlier': outlier, 'seed': seed,
            })
    return found


_ENUMERATORS: Dict[Type[GameModel], Callable[[GameModel, int, LabConfig], List[ExitEquilibrium]]] = {
    SelfDependence: _self_dependence,
    TwoClass: _two_class,
    Dominant: _dominant,
    Star: _star,
    WeakestLink: _weakest_link,
    GeneralWTE: _general_wte,
}


def _ordered_unique(found: List[ExitEquilibrium]) -> List[ExitEquilibrium]:
    ordered = ([e for e in found if not e.pattern.outlier_invests]
               + [e for e in found if e.pattern.outlier_invests])
    unique: List[ExitEquilibrium] = []
    for candidate in ordered:
        if not any(candidate.profile.is_close(kept.profile, _DUPLICATE_TOLERANCE) for kept in unique):
            unique.append(candidate)
    return unique


def exit_equilibria(model: GameModel, outlier: int,
                    config: Optional[LabConfig] = None) -> List[ExitEquilibrium]:
    """
    Every exit equilibrium for `outlier`, in deterministic order.

    Args:
        model: Any supported game model
        outlier: Index of the user leaving the mechanism

    Returns:
        Non-empty list; outcomes where the outlier free-rides come first

    Raises:
        InvalidInputError: If `outlier` is not a user of the model
        ConsistencyError: If no support pattern is consistent
    """
    config = config or default_config()
    if not 0 <= outlier < model.n_users:
        raise InvalidInputError(f"outlier index {outlier} out of range for N={model.n_users}")
    enumerator = _ENUMERATORS.get(type(model))
    if enumerator is None:
        raise InvalidInputError(f"no exit-equilibrium solver for {type(model).__name__}")

    try:
        equilibria = _ordered_unique(enumerator(model, outlier, config))
    except SolverFailureError:
        logger.solver('EXIT', 'Root finding failed', {'model': model.describe(), 'outlier': outlier})
        raise
    if not equilibria:
        raise ConsistencyError(
            f"no exit equilibrium for outlier {outlier} of {model.describe()}",
            {"outlier": outlier},
        )
    logger.debug('EXIT', 'Exit equilibria', {
        'model': model.describe(), 'outlier': outlier,
        'cases': [e.case_label for e in equilibria],
    })
    return equilibria


def all_exit_equilibria(model: GameModel,
                        config: Optional[LabConfig] = None) -> List[List[ExitEquilibrium]]:
    """Exit equilibria of every user, indexed by outlier."""
    return [exit_equilibria(model, i, config) for i in range(model.n_users)]
