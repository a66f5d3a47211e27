"""
Price of anarchy: social cost of the Nash equilibrium over that of the optimum.
"""

from typing import Optional

from core.config import LabConfig
from core.domain.game_model import GameModel
from core.services.costs import social_cost
from solver.nash import nash_equilibrium
from solver.social_optimum import social_optimum


def price_of_anarchy(model: GameModel, config: Optional[LabConfig] = None) -> float:
    """Ratio >= 1; equals 1 when the equilibrium is efficient."""
    x_star, _ = social_optimum(model, config)
    return social_cost(nash_equilibrium(model, config), model) / social_cost(x_star, model)
