"""
Analysis report types.
"""

from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class Verdict(str, Enum):
    ALWAYS = "Always"
    NEVER = "Never"


class ConditionCheck(BaseModel):
    """One log-space inequality lhs <relation> rhs and whether it holds."""
    name: str
    lhs: float
    rhs: float
    relation: str
    holds: bool


class RegimeVerdict(BaseModel):
    """
    Regime of a model and the mechanism properties that regime guarantees.

    vp_externality tells whether the Externality mechanism satisfies
    voluntary participation; bb_pivotal whether the Pivotal mechanism
    balances its budget.
    """
    case_label: str
    conditions: List[ConditionCheck] = Field(default_factory=list)
    vp_externality: Verdict
    bb_pivotal: Verdict
    exit_pattern: str
    shared_condition: bool = False
    parameters: Dict[str, Any] = Field(default_factory=dict)


class TwoClassExitConditions(BaseModel):
    """Existence of the two-class exit equilibria that have closed-form conditions."""
    reliant_outlier_invests: ConditionCheck
    self_dependent_outlier_free_rides: ConditionCheck
    reliant_outlier_free_rides: bool
    self_dependent_outlier_invests: bool
    parameters: Dict[str, Any] = Field(default_factory=dict)


class ImpossibilityReport(BaseModel):
    """
    Upper bounds on the taxes compatible with voluntary participation.

    When the caps sum to a negative number no tax profile can satisfy both
    voluntary participation and a non-negative budget.
    """
    topology: str
    parameters: Dict[str, Any] = Field(default_factory=dict)
    per_user_cap: List[float] = Field(default_factory=list)
    cap_sum: float
    closed_form_cap_sum: Optional[float] = None
    numeric_cap_sum: Optional[float] = None
    impossible: bool
    externality_bb_vp: Optional[bool] = None
    warnings: List[str] = Field(default_factory=list)


class CrossValidationMismatch(BaseModel):
    """A sampled model whose numerical verdict disagrees with its regime table."""
    parameters: Dict[str, Any]
    case_label: str
    quantity: str
    expected: str
    observed: str
    value: Optional[float] = None


__all__ = [
    'Verdict', 'ConditionCheck', 'RegimeVerdict', 'TwoClassExitConditions',
    'ImpossibilityReport', 'CrossValidationMismatch',
]
