"""
Pivotal Mechanism

Clarke taxes: each user pays the cost its participation imposes on the
others, measured against the exit equilibrium where it leaves,

    t_i = sum_{j != i} g_j(x*) - sum_{j != i} g_j(x_exit^i).
"""

from typing import Optional, Sequence

import numpy as np

from core.config import LabConfig, default_config
from core.domain.game_model import GameModel
from core.domain.profiles import InvestmentProfile, Mechanism, TaxProfile
from core.logger import logger
from core.services.costs import user_costs
from mechanisms.types import EESelection, MechanismReport
from mechanisms.verdicts import Selection, build_report, resolve_selection
from solver.exit_equilibria import all_exit_equilibria
from solver.social_optimum import social_optimum
from solver.types import ExitEquilibrium


def pivotal_taxes(model: GameModel, selection: Selection = EESelection.FIRST,
                  exits: Optional[Sequence[Sequence[ExitEquilibrium]]] = None,
                  x_star: Optional[InvestmentProfile] = None,
                  config: Optional[LabConfig] = None) -> MechanismReport:
    """
    Pivotal taxes at the social optimum.

    Args:
        model: Game model
        selection: Exit-equilibrium policy, or an explicit index per outlier
        exits: Precomputed exit equilibria per outlier
        x_star: Precomputed social optimum

    Returns:
        Report with taxes, budget and VP verdicts for every exit equilibrium
    """
    config = config or default_config()
    if x_star is None:
        x_star, _ = social_optimum(model, config)
    if exits is None:
        exits = all_exit_equilibria(model, config)
    selected = resolve_selection(model, exits, selection)

    optimum_costs = user_costs(x_star, model)
    others_at_optimum = optimum_costs.sum() - optimum_costs
    taxes = np.empty(model.n_users)
    for i, k in enumerate(selected):
        exit_costs = user_costs(exits[i][k].profile, model)
        taxes[i] = others_at_optimum[i] - (exit_costs.sum() - exit_costs[i])

    report = build_report(model, Mechanism.PIVOTAL, TaxProfile(taxes, Mechanism.PIVOTAL),
                          x_star, exits, selected, config)
    logger.debug('PIVOTAL', 'Pivotal taxes', {
        'model': model.describe(), 'budget': report.budget, 'selected': selected,
    })
    return report
