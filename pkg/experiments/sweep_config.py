"""
Sweep configuration.
"""

from pathlib import Path
from typing import Any, Dict, List, Literal, Mapping, Optional

import numpy as np
from pydantic import BaseModel, Field, ValidationError, model_validator

from core.domain.game_model import GameFamily
from core.errors import InvalidInputError
from core.services.model_factory import family_parameters, parse_family
from mechanisms.types import EESelection

# Self-dependence cost sweep: c = a / a_over_c.
COST_RATIO = "a_over_c"

_INTEGER_PARAMETERS = frozenset({"n", "n1", "n2"})


class SweepConfig(BaseModel):
    """
    One-parameter sweep over a game family.

    Attributes:
        family: Game family of every point
        parameter: Family parameter to vary, or `a_over_c`
        start: First swept value
        stop: Last swept value
        steps: Number of points, at least 2
        scale: linear or log spacing
        fixed: Values of the parameters that are not swept
        output: CSV destination
        selection: Exit-equilibrium policy of the mechanisms
        workers: Worker processes evaluating the points; unset uses
            `LabConfig.sweep_workers`
    """
    family: GameFamily
    parameter: str
    start: float
    stop: float
    steps: int = Field(ge=2)
    scale: Literal["linear", "log"] = "linear"
    fixed: Dict[str, Any] = Field(default_factory=dict)
    output: Optional[Path] = None
    selection: EESelection = EESelection.LEAST_BENEFICIAL
    workers: Optional[int] = Field(default=None, ge=1)
    preset: Optional[str] = None

    @model_validator(mode="after")
    def _check_parameter(self) -> "SweepConfig":
        known = family_parameters(self.family)
        if self.parameter == COST_RATIO:
            if "a" not in known or "c" not in known:
                raise ValueError(f"{COST_RATIO} sweeps need a family with 'a' and 'c'")
            if self.fixed.get("a") is None:
                raise ValueError(f"{COST_RATIO} sweeps need a fixed value of 'a'")
        elif self.parameter not in known:
            raise ValueError(f"'{self.parameter}' is not a parameter of {self.family.value}")
        if self.scale == "log" and min(self.start, self.stop) <= 0:
            raise ValueError("log-scaled sweeps need positive bounds")
        if self.parameter in self.fixed:
            raise ValueError(f"'{self.parameter}' is both swept and fixed")
        return self

    @classmethod
    def from_flat(cls, values: Mapping[str, Any]) -> "SweepConfig":
        """
        Build from a flat mapping; keys that are not fields become fixed parameters.

        Raises:
            InvalidInputError: If the mapping does not describe a valid sweep
        """
        fields = set(cls.model_fields)
        structured: Dict[str, Any] = {k: v for k, v in values.items() if k in fields and v is not None}
        fixed = dict(structured.pop("fixed", None) or {})
        fixed.update({k: v for k, v in values.items() if k not in fields and v is not None})
        try:
            if "family" in structured:
                structured["family"] = parse_family(structured["family"])
            return cls(fixed=fixed, **structured)
        except ValidationError as e:
            raise InvalidInputError(f"invalid sweep configuration: {e}") from e

    def values(self) -> List[float]:
        """Swept values in sweep order."""
        space = np.geomspace if self.scale == "log" else np.linspace
        points = space(self.start, self.stop, self.steps)
        if self.parameter in _INTEGER_PARAMETERS:
            points = np.round(points)
        return [float(v) for v in points]

    def point_parameters(self, value: float) -> Dict[str, Any]:
        """Model parameters of the point where the swept parameter equals `value`."""
        params = dict(self.fixed)
        if self.parameter == COST_RATIO:
            params["c"] = float(params["a"]) / value
        else:
            params[self.parameter] = value
        return params

    def to_flat(self) -> Dict[str, Any]:
        flat = self.model_dump(mode="json", exclude={"fixed"}, exclude_none=True)
        flat.update(self.fixed)
        return flat
