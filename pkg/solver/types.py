"""
Solver result types.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from core.domain.profiles import InvestmentProfile


@dataclass(frozen=True, eq=False)
class KktCertificate:
    """
    First-order optimality certificate of a profile for a (group) cost.

    Multipliers are lambda_k = max(gradient_k, 0); the stationarity residual is
    gradient_k - lambda_k, non-zero only where the gradient is negative.

    Attributes:
        multipliers: lambda >= 0 for every coordinate the group controls
        residuals: Stationarity residual per controlled coordinate
        support: Controlled coordinates with positive investment
        slackness: lambda_k * x_k per controlled coordinate
    """
    multipliers: np.ndarray
    residuals: np.ndarray
    support: Tuple[int, ...]
    slackness: np.ndarray
    stationarity_tolerance: float = 1e-8
    slackness_tolerance: float = 1e-9

    @property
    def max_residual(self) -> float:
        return float(np.max(np.abs(self.residuals))) if self.residuals.size else 0.0

    @property
    def max_slackness(self) -> float:
        return float(np.max(np.abs(self.slackness))) if self.slackness.size else 0.0

    @property
    def is_valid(self) -> bool:
        return (self.max_residual <= self.stationarity_tolerance
                and self.max_slackness <= self.slackness_tolerance)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "valid": self.is_valid,
            "max_residual": self.max_residual,
            "max_slackness": self.max_slackness,
            "support": list(self.support),
            "multipliers": self.multipliers.tolist(),
        }


@dataclass(frozen=True)
class SupportPattern:
    """Which of the outlier and the participants invest."""
    outlier_invests: bool
    investing_participants: Tuple[int, ...]

    def describe(self) -> str:
        outlier = "outlier+" if self.outlier_invests else "outlier0"
        participants = "participants+" if self.investing_participants else "participants0"
        return f"{outlier}/{participants}"


@dataclass(frozen=True, eq=False)
class ExitEquilibrium:
    """
    Outcome when `outlier` leaves the mechanism and best-responds alone while
    the remaining users jointly minimise their summed cost.
    """
    outlier: int
    profile: InvestmentProfile
    pattern: SupportPattern
    case_label: str
    details: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_levels(cls, outlier: int, levels: np.ndarray, case_label: str,
                    details: Optional[Dict[str, Any]] = None) -> "ExitEquilibrium":
        """Build an equilibrium and derive its support pattern from the levels."""
        profile = InvestmentProfile(np.maximum(np.asarray(levels, dtype=float), 0.0))
        investing = tuple(i for i in profile.support() if i != outlier)
        pattern = SupportPattern(profile[outlier] > 0, investing)
        return cls(outlier, profile, pattern, case_label, dict(details or {}))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "outlier": self.outlier,
            "case": self.case_label,
            "pattern": self.pattern.describe(),
            "profile": self.profile.as_list(),
        }


@dataclass(frozen=True, eq=False)
class SolverResult:
    """Profile together with its certificate and iteration count."""
    profile: InvestmentProfile
    certificate: KktCertificate
    iterations: int = 0

    def as_tuple(self) -> Tuple[InvestmentProfile, KktCertificate]:
        return self.profile, self.certificate


ExitEquilibria = List[ExitEquilibrium]
