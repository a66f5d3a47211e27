"""
Profile Value Objects

Investment profiles, tax profiles and per-user cost breakdowns.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Tuple

import numpy as np

from core.errors import InvalidInputError


class Mechanism(str, Enum):
    """Tax mechanism that produced a tax profile."""
    PIVOTAL = "pivotal"
    EXTERNALITY = "externality"


def _frozen_vector(values: Iterable[float], name: str) -> np.ndarray:
    try:
        vector = np.array(values, dtype=float)
    except (TypeError, ValueError) as e:
        raise InvalidInputError(f"{name} must be numeric: {e}") from e
    if vector.ndim != 1 or vector.size == 0:
        raise InvalidInputError(f"{name} must be a non-empty vector, got shape {vector.shape}")
    if not np.all(np.isfinite(vector)):
        raise InvalidInputError(f"{name} must be finite")
    vector.setflags(write=False)
    return vector


@dataclass(frozen=True, eq=False)
class InvestmentProfile:
    """
    Security investments x_i >= 0 of all users.

    Attributes:
        levels: Read-only length-N vector
    """
    levels: np.ndarray

    def __post_init__(self):
        vector = _frozen_vector(self.levels, "investment profile")
        if np.any(vector < 0):
            raise InvalidInputError(f"investments must be non-negative, got {vector.tolist()}")
        object.__setattr__(self, "levels", vector)

    @classmethod
    def uniform(cls, n_users: int, level: float) -> "InvestmentProfile":
        return cls(np.full(n_users, max(0.0, float(level))))

    @classmethod
    def single(cls, n_users: int, user: int, level: float) -> "InvestmentProfile":
        """Profile where only `user` invests."""
        levels = np.zeros(n_users)
        levels[user] = max(0.0, float(level))
        return cls(levels)

    @property
    def n_users(self) -> int:
        return int(self.levels.size)

    def support(self) -> Tuple[int, ...]:
        return tuple(int(i) for i in np.flatnonzero(self.levels > 0))

    def is_close(self, other: "InvestmentProfile", tolerance: float = 1e-9) -> bool:
        return self.n_users == other.n_users and bool(
            np.max(np.abs(self.levels - other.levels)) <= tolerance
        )

    def as_list(self) -> List[float]:
        return self.levels.tolist()

    def __len__(self) -> int:
        return self.n_users

    def __getitem__(self, index: int) -> float:
        return float(self.levels[index])


@dataclass(frozen=True, eq=False)
class TaxProfile:
    """
    Taxes t_i charged to (t_i > 0) or paid to (t_i < 0) each user.

    Externality profiles balance exactly, so their sum must vanish up to
    `balance_tolerance`, relative to the total tax volume.
    """
    taxes: np.ndarray
    mechanism: Mechanism
    balance_tolerance: float = 1e-9

    def __post_init__(self):
        object.__setattr__(self, "taxes", _frozen_vector(self.taxes, "tax profile"))
        try:
            object.__setattr__(self, "mechanism", Mechanism(self.mechanism))
        except ValueError as e:
            raise InvalidInputError(f"unknown mechanism {self.mechanism!r}") from e
        self._validate_balance()

    def _validate_balance(self):
        if self.mechanism is not Mechanism.EXTERNALITY:
            return
        scale = max(1.0, float(np.sum(np.abs(self.taxes))))
        if abs(self.budget) > self.balance_tolerance * scale:
            raise InvalidInputError(f"externality taxes must sum to zero, got {self.budget}")

    @property
    def budget(self) -> float:
        """Sum of taxes; negative means the mechanism runs a deficit."""
        return float(np.sum(self.taxes))

    @property
    def n_users(self) -> int:
        return int(self.taxes.size)

    def as_list(self) -> List[float]:
        return self.taxes.tolist()

    def __getitem__(self, index: int) -> float:
        return float(self.taxes[index])


@dataclass(frozen=True)
class CostBreakdown:
    """Decomposition of one user's cost."""
    risk: float
    investment_cost: float
    tax: float = 0.0

    @property
    def total(self) -> float:
        return self.risk + self.investment_cost + self.tax
