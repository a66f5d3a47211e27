"""
Mechanism data types.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, Field

from core.config import LabConfig, default_config
from core.domain.profiles import Mechanism, TaxProfile
from core.errors import InvalidInputError


class EESelection(str, Enum):
    """
    Policy picking one exit equilibrium per outlier when several coexist.

    FIRST takes the enumeration order; LEAST_BENEFICIAL the equilibrium
    with the highest cost for the outlier; MOST_BENEFICIAL the lowest.
    """
    FIRST = "first"
    LEAST_BENEFICIAL = "least-beneficial"
    MOST_BENEFICIAL = "most-beneficial"


@dataclass(frozen=True, eq=False)
class Message:
    """
    One user's message in the Externality mechanism.

    Attributes:
        proposal: chi_i, the investment profile the user proposes
        prices: pi_i, the per-coordinate prices the user announces
    """
    proposal: np.ndarray
    prices: np.ndarray

    def __post_init__(self):
        for name in ("proposal", "prices"):
            try:
                vector = np.array(getattr(self, name), dtype=float)
            except (TypeError, ValueError) as e:
                raise InvalidInputError(f"message {name} must be numeric: {e}") from e
            if vector.ndim != 1:
                raise InvalidInputError(f"message {name} must be a vector")
            if not np.all(np.isfinite(vector)) or np.any(vector < 0):
                raise InvalidInputError(f"message {name} must be finite and non-negative")
            vector.setflags(write=False)
            object.__setattr__(self, name, vector)
        if self.proposal.shape != self.prices.shape:
            raise InvalidInputError("message proposal and prices must have the same length")

    @property
    def dimension(self) -> int:
        return int(self.proposal.size)


class MechanismReport(BaseModel):
    """
    Taxes of a mechanism with its budget and participation verdicts.

    Benefits are g_i(x_exit) - [g_i(x*) + t_i]; a user participates
    voluntarily when its benefit is non-negative.
    """
    mechanism: Mechanism
    model: Dict[str, Any] = Field(default_factory=dict)
    social_optimum: List[float] = Field(default_factory=list)
    taxes: List[float] = Field(default_factory=list)
    budget: float = 0.0
    bb_verdict: bool = True
    selected_exit: List[int] = Field(default_factory=list)
    exit_cases: List[List[str]] = Field(default_factory=list)
    participation_benefit: List[float] = Field(default_factory=list)
    per_exit_benefit: List[List[float]] = Field(default_factory=list)
    vp_verdicts: List[List[bool]] = Field(default_factory=list)

    def tax_profile(self, config: Optional[LabConfig] = None) -> TaxProfile:
        config = config or default_config()
        return TaxProfile(np.array(self.taxes), self.mechanism, config.budget_identity_tolerance)

    @property
    def vp_selected(self) -> List[bool]:
        """VP verdict per user under its selected exit equilibrium."""
        return [verdicts[k] for verdicts, k in zip(self.vp_verdicts, self.selected_exit)]


__all__ = ['EESelection', 'Message', 'MechanismReport']
