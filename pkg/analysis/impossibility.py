"""
Impossibility Reports

For a topology, compute the largest tax each user accepts before leaving
(its voluntary-participation cap) and whether those caps can fund a
non-negative budget. Negative cap sums prove that no mechanism achieving the
social optimum can be both voluntary and budget balanced.
"""

import math
from typing import List, Optional, Union

import numpy as np

from analysis.types import ImpossibilityReport
from core.config import LabConfig, default_config
from core.domain.game_model import GameModel, RiskKind, Star, WeakestLink
from core.errors import InvalidInputError
from core.logger import logger
from core.services.costs import user_costs
from mechanisms.externality import externality_equilibrium_taxes
from mechanisms.types import EESelection
from solver.exit_equilibria import all_exit_equilibria
from solver.types import ExitEquilibrium
from solver.social_optimum import social_optimum


def _exit_for_cap(equilibria: List[ExitEquilibrium], outlier_invests: bool) -> ExitEquilibrium:
    if outlier_invests:
        return next((e for e in equilibria if e.pattern.outlier_invests), equilibria[0])
    return equilibria[0]


def vp_caps(model: GameModel, config: Optional[LabConfig] = None,
            outlier_invests: bool = False) -> List[float]:
    """
    g_i(x_exit^i) - g_i(x*) per user.

    Uses the first exit equilibrium of each outlier, or with `outlier_invests`
    the first one where the outlier keeps investing after it leaves.
    """
    x_star, _ = social_optimum(model, config)
    optimum_costs = user_costs(x_star, model)
    exits = all_exit_equilibria(model, config)
    return [float(user_costs(_exit_for_cap(eqs, outlier_invests).profile, model)[i] - optimum_costs[i])
            for i, eqs in enumerate(exits)]


def _star_closed_form(n: int, c: float, risk: RiskKind) -> Optional[float]:
    if risk is RiskKind.RECIPROCAL:
        return math.sqrt(c) * (2 + math.sqrt(n - 1) - 2 * math.sqrt(n))
    # Exponential caps need the root to invest when it leaves.
    if c > 1:
        return None
    return c * (1 - math.log(n))


def star_impossibility(n: int, c: float, risk: Union[RiskKind, str] = RiskKind.EXP,
                       config: Optional[LabConfig] = None) -> ImpossibilityReport:
    """
    VP caps of the star topology.

    With exponential risk the caps sum to c(1 - ln N), negative for N >= 3.

    Raises:
        InvalidInputError: If n < 2, c <= 0 or the risk kind is unknown
    """
    config = config or default_config()
    model = Star(n, c, risk)
    warnings: List[str] = []
    if model.n_users == 2:
        warnings.append("a two-user star is a degenerate topology: root and leaf are symmetric")

    # Caps are measured against the exit where the root buys its own protection.
    caps = vp_caps(model, config, outlier_invests=True)
    cap_sum = float(np.sum(caps))
    closed_form = _star_closed_form(model.n_users, c, model.risk_kind)
    if closed_form is None:
        warnings.append("closed-form cap sum assumes c <= 1")
    elif abs(closed_form - cap_sum) > 1e-6 * max(1.0, abs(closed_form)):
        warnings.append(f"numeric cap sum {cap_sum:.9g} differs from closed form {closed_form:.9g}")

    report = ImpossibilityReport(
        topology="star",
        parameters=model.parameters(),
        per_user_cap=caps,
        cap_sum=cap_sum,
        closed_form_cap_sum=closed_form,
        numeric_cap_sum=cap_sum,
        impossible=cap_sum < -config.bb_tolerance,
        warnings=warnings,
    )
    logger.debug('IMPOSSIBILITY', 'Star caps', report.model_dump())
    return report


def weakest_link_cap(n: float, rho: float, c: float) -> float:
    """Per-user cap c(1 + (1/rho) ln(2^(1-rho)/N)); valid for real N >= 2."""
    return c * (1 + ((1 - rho) * math.log(2) - math.log(n)) / rho)


def weakest_link_impossibility(n: float, rho: float, c: float,
                               config: Optional[LabConfig] = None) -> ImpossibilityReport:
    """
    VP caps of the weakest-link game.

    The closed form accepts a real-valued N. Integer N is also solved
    numerically and, when the caps do not rule it out, the Externality
    equilibrium taxes are checked for budget balance and participation.

    Raises:
        InvalidInputError: If n < 2, rho <= 0 or c <= 0
    """
    config = config or default_config()
    try:
        n, rho, c = float(n), float(rho), float(c)
    except (TypeError, ValueError) as e:
        raise InvalidInputError(f"weakest-link parameters must be numeric: {e}") from e
    if not n >= 2:
        raise InvalidInputError(f"n must be at least 2, got {n}")
    if not (rho > 0 and c > 0) or not all(map(math.isfinite, (n, rho, c))):
        raise InvalidInputError("rho and c must be positive and finite")

    warnings: List[str] = []
    optimum_level = math.log(n) / rho - math.log(c)
    exit_level = (1 - rho) * math.log(2) / rho - math.log(c)
    if optimum_level < 0 or exit_level < 0:
        warnings.append("closed-form cap assumes positive investment at the optimum and on exit")

    cap = weakest_link_cap(n, rho, c)
    closed_form = n * cap
    report = ImpossibilityReport(
        topology="weakestlink",
        parameters={"n": n, "rho": rho, "c": c},
        per_user_cap=[cap],
        cap_sum=closed_form,
        closed_form_cap_sum=closed_form,
        impossible=closed_form < -config.bb_tolerance,
        warnings=warnings,
    )

    if not n.is_integer():
        return report

    model = WeakestLink(int(n), rho, c)
    caps = vp_caps(model, config)
    report.per_user_cap = caps
    report.numeric_cap_sum = float(np.sum(caps))
    report.parameters = model.parameters()
    if abs(report.numeric_cap_sum - closed_form) > 1e-6 * max(1.0, abs(closed_form)):
        warnings.append(f"numeric cap sum {report.numeric_cap_sum:.9g} differs from closed form")

    if not report.impossible:
        externality = externality_equilibrium_taxes(model, selection=EESelection.FIRST, config=config)
        report.externality_bb_vp = externality.bb_verdict and all(externality.vp_selected)
    logger.debug('IMPOSSIBILITY', 'Weakest-link caps', report.model_dump())
    return report
