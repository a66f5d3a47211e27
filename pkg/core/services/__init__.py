"""
Service Layer

Cost evaluation and model construction.
"""

from core.services.costs import (
    eval_cost,
    eval_total_cost,
    group_cost,
    risk_sensitivities,
    risks,
    social_cost,
    user_costs,
)
from core.services.model_factory import build_model, family_parameters, parse_family

__all__ = [
    # Costs
    'eval_cost',
    'eval_total_cost',
    'group_cost',
    'risk_sensitivities',
    'risks',
    'social_cost',
    'user_costs',
    # Factory
    'build_model',
    'family_parameters',
    'parse_family',
]
