"""
Game Model Value Objects

Immutable descriptors of the interdependent security game families.

Every family charges user i the cost g_i(x) = f_i(x) + c_i x_i, where f_i is the
probability-weighted loss (risk) and c_i the unit cost of security investment.
Linear-aggregate families evaluate f_i on z_i = (A x)_i for an influence
matrix A; the weakest-link family aggregates with a soft minimum instead.
"""

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Any, ClassVar, Dict, List, NamedTuple, Tuple

import numpy as np

from core.errors import InvalidInputError


class GameFamily(str, Enum):
    """Identifiers of the supported game families."""
    SELF_DEPENDENCE = "selfdep"
    TWO_CLASS = "twoclass"
    DOMINANT = "dominant"
    STAR = "star"
    WEAKEST_LINK = "weakestlink"
    GENERAL_WTE = "wte"


class RiskKind(str, Enum):
    """
    Shape of the risk function f applied to the aggregate effort z.

    EXP is f(z) = exp(-z); RECIPROCAL is f(z) = 1/z (defined for z > 0).
    """
    EXP = "exp"
    RECIPROCAL = "reciprocal"

    def log_value(self, z):
        if self is RiskKind.EXP:
            return -np.asarray(z, dtype=float)
        z = np.asarray(z, dtype=float)
        with np.errstate(divide='ignore'):
            return np.where(z > 0, -np.log(np.where(z > 0, z, 1.0)), np.inf)

    def evaluate(self, z):
        """f(z)."""
        return np.exp(self.log_value(z))

    def derivative(self, z):
        """f'(z)."""
        z = np.asarray(z, dtype=float)
        if self is RiskKind.EXP:
            return -np.exp(-z)
        return -1.0 / z ** 2

    def second_derivative(self, z):
        z = np.asarray(z, dtype=float)
        if self is RiskKind.EXP:
            return np.exp(-z)
        return 2.0 / z ** 3

    def stationary_level(self, weight: float, unit_cost: float) -> float:
        """
        Aggregate effort z solving weight * (-f'(z)) = unit_cost.

        The result can be negative for EXP when weight < unit_cost; callers
        project it onto their feasible set.
        """
        if self is RiskKind.EXP:
            return math.log(weight / unit_cost)
        return math.sqrt(weight / unit_cost)


class UserBlock(NamedTuple):
    """Named group of interchangeable users."""
    name: str
    members: Tuple[int, ...]

    @property
    def representative(self) -> int:
        return self.members[0]


def _require_positive(name: str, value: float):
    if not isinstance(value, (int, float, np.integer, np.floating)) or isinstance(value, bool):
        raise InvalidInputError(f"{name} must be a real number, got {type(value).__name__}")
    if not math.isfinite(value) or value <= 0:
        raise InvalidInputError(f"{name} must be strictly positive and finite, got {value}")


def _require_count(name: str, value: int, minimum: int):
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise InvalidInputError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise InvalidInputError(f"{name} must be at least {minimum}, got {value}")


class GameModel(ABC):
    """Common interface of every game family."""

    family: ClassVar[GameFamily]

    @property
    @abstractmethod
    def n_users(self) -> int:
        ...

    @abstractmethod
    def unit_costs(self) -> np.ndarray:
        """Vector of marginal investment costs c_i."""

    @abstractmethod
    def blocks(self) -> List[UserBlock]:
        """Partition of the users into groups with identical roles."""

    @abstractmethod
    def parameters(self) -> Dict[str, Any]:
        """Flat description used in reports and logs."""

    def block_of(self, user: int) -> UserBlock:
        for block in self.blocks():
            if user in block.members:
                return block
        raise InvalidInputError(f"user index {user} out of range for N={self.n_users}")

    def describe(self) -> str:
        args = ", ".join(f"{k}={v}" for k, v in self.parameters().items() if k != "family")
        return f"{type(self).__name__}({args})"


class LinearAggregateModel(GameModel):
    """Families whose risk is f((A x)_i) for a fixed influence matrix A."""

    risk_kind: ClassVar[RiskKind] = RiskKind.EXP

    @abstractmethod
    def influence_matrix(self) -> np.ndarray:
        ...


@dataclass(frozen=True)
class SelfDependence(LinearAggregateModel):
    """
    Symmetric total-effort game with self-dependence a.

    Attributes:
        a: Weight of a user's own investment in its risk (A_ii)
        n: Number of users
        c: Unit cost of investment, c < a
    """
    a: float
    n: int
    c: float

    family: ClassVar[GameFamily] = GameFamily.SELF_DEPENDENCE

    def __post_init__(self):
        _require_positive("a", self.a)
        _require_positive("c", self.c)
        _require_count("n", self.n, 2)
        if not self.c < self.a:
            raise InvalidInputError(f"self-dependence requires c < a, got c={self.c}, a={self.a}")

    @property
    def n_users(self) -> int:
        return int(self.n)

    def unit_costs(self) -> np.ndarray:
        return np.full(self.n_users, float(self.c))

    @cached_property
    def _influence(self) -> np.ndarray:
        matrix = np.ones((self.n_users, self.n_users))
        np.fill_diagonal(matrix, self.a)
        matrix.setflags(write=False)
        return matrix

    def influence_matrix(self) -> np.ndarray:
        return self._influence

    def blocks(self) -> List[UserBlock]:
        return [UserBlock("users", tuple(range(self.n_users)))]

    def parameters(self) -> Dict[str, Any]:
        return {"family": self.family.value, "a": self.a, "n": self.n, "c": self.c}


@dataclass(frozen=True)
class TwoClass(LinearAggregateModel):
    """
    Total-effort game with a self-dependent class and a reliant class.

    The first n1 users weight their own investment by a1 > 1, the remaining
    n2 users by a2 < 1; every cross weight is 1.
    """
    a1: float
    a2: float
    n1: int
    n2: int
    c: float

    family: ClassVar[GameFamily] = GameFamily.TWO_CLASS

    def __post_init__(self):
        for name in ("a1", "a2", "c"):
            _require_positive(name, getattr(self, name))
        _require_count("n1", self.n1, 2)
        _require_count("n2", self.n2, 1)
        if not self.c < self.a2 < 1 < self.a1:
            raise InvalidInputError(
                f"two-class model requires c < a2 < 1 < a1, got c={self.c}, a2={self.a2}, a1={self.a1}"
            )

    @property
    def n_users(self) -> int:
        return int(self.n1 + self.n2)

    def unit_costs(self) -> np.ndarray:
        return np.full(self.n_users, float(self.c))

    @cached_property
    def _influence(self) -> np.ndarray:
        matrix = np.ones((self.n_users, self.n_users))
        diagonal = np.concatenate([np.full(self.n1, self.a1), np.full(self.n2, self.a2)])
        np.fill_diagonal(matrix, diagonal)
        matrix.setflags(write=False)
        return matrix

    def influence_matrix(self) -> np.ndarray:
        return self._influence

    def blocks(self) -> List[UserBlock]:
        return [
            UserBlock("self_dependent", tuple(range(self.n1))),
            UserBlock("reliant", tuple(range(self.n1, self.n_users))),
        ]

    def parameters(self) -> Dict[str, Any]:
        return {"family": self.family.value, "a1": self.a1, "a2": self.a2,
                "n1": self.n1, "n2": self.n2, "c": self.c}


@dataclass(frozen=True)
class Dominant(LinearAggregateModel):
    """
    Total-effort game where user 0's investment counts a times for everybody.

    Every user's risk is exp(-a x_0 - sum_{j>=1} x_j).
    """
    a: float
    n: int
    c: float

    family: ClassVar[GameFamily] = GameFamily.DOMINANT

    def __post_init__(self):
        _require_positive("a", self.a)
        _require_positive("c", self.c)
        _require_count("n", self.n, 2)
        if not self.c < 1 < self.a:
            raise InvalidInputError(f"dominant model requires c < 1 < a, got c={self.c}, a={self.a}")

    @property
    def n_users(self) -> int:
        return int(self.n)

    def unit_costs(self) -> np.ndarray:
        return np.full(self.n_users, float(self.c))

    @cached_property
    def _influence(self) -> np.ndarray:
        matrix = np.ones((self.n_users, self.n_users))
        matrix[:, 0] = self.a
        matrix.setflags(write=False)
        return matrix

    def influence_matrix(self) -> np.ndarray:
        return self._influence

    def blocks(self) -> List[UserBlock]:
        return [UserBlock("dominant", (0,)), UserBlock("others", tuple(range(1, self.n_users)))]

    def parameters(self) -> Dict[str, Any]:
        return {"family": self.family.value, "a": self.a, "n": self.n, "c": self.c}


@dataclass(frozen=True)
class Star(LinearAggregateModel):
    """
    Star topology: the root (user 0) protects every leaf, leaves protect the root.

    Root risk is f(x_0 + sum_j x_j); leaf j risk is f(x_0 + x_j).
    """
    n: int
    c: float
    risk: RiskKind = RiskKind.EXP

    family: ClassVar[GameFamily] = GameFamily.STAR

    def __post_init__(self):
        _require_count("n", self.n, 2)
        _require_positive("c", self.c)
        try:
            object.__setattr__(self, "risk", RiskKind(self.risk))
        except ValueError as e:
            raise InvalidInputError(f"unknown risk kind {self.risk!r}") from e

    @property
    def risk_kind(self) -> RiskKind:  # type: ignore[override]
        return self.risk

    @property
    def n_users(self) -> int:
        return int(self.n)

    def unit_costs(self) -> np.ndarray:
        return np.full(self.n_users, float(self.c))

    @cached_property
    def _influence(self) -> np.ndarray:
        matrix = np.eye(self.n_users)
        matrix[0, :] = 1.0
        matrix[:, 0] = 1.0
        matrix.setflags(write=False)
        return matrix

    def influence_matrix(self) -> np.ndarray:
        return self._influence

    def blocks(self) -> List[UserBlock]:
        return [UserBlock("root", (0,)), UserBlock("leaves", tuple(range(1, self.n_users)))]

    def parameters(self) -> Dict[str, Any]:
        return {"family": self.family.value, "n": self.n, "c": self.c, "risk": self.risk.value}


@dataclass(frozen=True)
class WeakestLink(GameModel):
    """
    Weakest-link game with soft minimum: every user's risk is
    (sum_j exp(-rho x_j))^(1/rho).
    """
    n: int
    rho: float
    c: float

    family: ClassVar[GameFamily] = GameFamily.WEAKEST_LINK

    def __post_init__(self):
        _require_count("n", self.n, 2)
        _require_positive("rho", self.rho)
        _require_positive("c", self.c)

    @property
    def n_users(self) -> int:
        return int(self.n)

    def unit_costs(self) -> np.ndarray:
        return np.full(self.n_users, float(self.c))

    def blocks(self) -> List[UserBlock]:
        return [UserBlock("users", tuple(range(self.n_users)))]

    def parameters(self) -> Dict[str, Any]:
        return {"family": self.family.value, "n": self.n, "rho": self.rho, "c": self.c}


@dataclass(frozen=True, eq=False)
class GeneralWTE(LinearAggregateModel):
    """
    Weighted total effort with an arbitrary non-negative influence matrix.

    Attributes:
        influence: N x N matrix A with A_ii > 0 and A_ij >= 0
        costs: Length-N vector of unit costs c_i > 0
    """
    influence: np.ndarray
    costs: np.ndarray

    family: ClassVar[GameFamily] = GameFamily.GENERAL_WTE

    def __post_init__(self):
        try:
            matrix = np.array(self.influence, dtype=float)
            costs = np.array(self.costs, dtype=float)
        except (TypeError, ValueError) as e:
            raise InvalidInputError(f"influence and costs must be numeric arrays: {e}") from e
        self._validate_shapes(matrix, costs)
        self._validate_entries(matrix, costs)
        matrix.setflags(write=False)
        costs.setflags(write=False)
        object.__setattr__(self, "influence", matrix)
        object.__setattr__(self, "costs", costs)

    @staticmethod
    def _validate_shapes(matrix: np.ndarray, costs: np.ndarray):
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise InvalidInputError(f"influence matrix must be square, got shape {matrix.shape}")
        if matrix.shape[0] < 2:
            raise InvalidInputError("influence matrix needs at least 2 users")
        if costs.shape != (matrix.shape[0],):
            raise InvalidInputError(
                f"unit costs must have length {matrix.shape[0]}, got shape {costs.shape}"
            )

    @staticmethod
    def _validate_entries(matrix: np.ndarray, costs: np.ndarray):
        if not (np.all(np.isfinite(matrix)) and np.all(np.isfinite(costs))):
            raise InvalidInputError("influence matrix and unit costs must be finite")
        if np.any(matrix < 0):
            raise InvalidInputError("influence weights must be non-negative")
        if np.any(np.diag(matrix) <= 0):
            raise InvalidInputError("influence matrix needs a strictly positive diagonal")
        if np.any(costs <= 0):
            raise InvalidInputError("unit costs must be strictly positive")

    @property
    def n_users(self) -> int:
        return int(self.influence.shape[0])

    def unit_costs(self) -> np.ndarray:
        return self.costs

    def influence_matrix(self) -> np.ndarray:
        return self.influence

    def blocks(self) -> List[UserBlock]:
        return [UserBlock(f"user{i}", (i,)) for i in range(self.n_users)]

    def parameters(self) -> Dict[str, Any]:
        return {"family": self.family.value, "influence": self.influence.tolist(),
                "unit_costs": self.costs.tolist()}
