"""
Regime classification, impossibility reports, price of anarchy and batch cross-validation.
"""

from analysis.anarchy import price_of_anarchy
from analysis.cross_validation import cross_validate_dominant, cross_validate_self_dependence
from analysis.impossibility import star_impossibility, weakest_link_impossibility
from analysis.regimes import classify_dominant, classify_self_dependence, two_class_exit_conditions
from analysis.types import (
    ConditionCheck, CrossValidationMismatch, ImpossibilityReport, RegimeVerdict,
    TwoClassExitConditions, Verdict,
)

__all__ = [
    'classify_self_dependence',
    'classify_dominant',
    'two_class_exit_conditions',
    'star_impossibility',
    'weakest_link_impossibility',
    'price_of_anarchy',
    'cross_validate_self_dependence',
    'cross_validate_dominant',
    'Verdict',
    'ConditionCheck',
    'RegimeVerdict',
    'TwoClassExitConditions',
    'ImpossibilityReport',
    'CrossValidationMismatch',
]
