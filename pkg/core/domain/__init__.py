"""
Domain Layer

Game models and the value objects exchanged between solvers and mechanisms.
"""

# Game models
from core.domain.game_model import (
    Dominant,
    GameFamily,
    GameModel,
    GeneralWTE,
    LinearAggregateModel,
    RiskKind,
    SelfDependence,
    Star,
    TwoClass,
    UserBlock,
    WeakestLink,
)

# Value Objects
from core.domain.profiles import CostBreakdown, InvestmentProfile, Mechanism, TaxProfile

__all__ = [
    # Game models
    'GameFamily',
    'RiskKind',
    'UserBlock',
    'GameModel',
    'LinearAggregateModel',
    'SelfDependence',
    'TwoClass',
    'Dominant',
    'Star',
    'WeakestLink',
    'GeneralWTE',
    # Value Objects
    'InvestmentProfile',
    'TaxProfile',
    'CostBreakdown',
    'Mechanism',
]
