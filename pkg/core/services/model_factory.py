"""
Model Factory

Builds GameModel instances from flat parameter mappings such as CLI flags,
JSON config files or sweep grid points.
"""

import json
import math
from pathlib import Path
from typing import Any, Callable, Dict, Mapping, Tuple

import numpy as np

from core.domain.game_model import (
    Dominant, GameFamily, GameModel, GeneralWTE, SelfDependence, Star, TwoClass, WeakestLink,
)
from core.errors import InvalidInputError


def _count(params: Mapping[str, Any], key: str) -> int:
    value = _real(params, key)
    if not float(value).is_integer():
        raise InvalidInputError(f"{key} must be an integer, got {value}")
    return int(value)


def _real(params: Mapping[str, Any], key: str) -> float:
    if params.get(key) is None:
        raise InvalidInputError(f"missing parameter '{key}'")
    try:
        value = float(params[key])
    except (TypeError, ValueError) as e:
        raise InvalidInputError(f"parameter '{key}' must be a number, got {params[key]!r}") from e
    if not math.isfinite(value):
        raise InvalidInputError(f"parameter '{key}' must be finite")
    return value


def _general_wte(params: Mapping[str, Any]) -> GeneralWTE:
    values = dict(params)
    if values.get("matrix"):
        try:
            values.update(json.loads(Path(values["matrix"]).read_text()))
        except (OSError, json.JSONDecodeError) as e:
            raise InvalidInputError(f"cannot read influence file {values['matrix']}: {e}") from e
    if values.get("influence") is None or values.get("unit_costs") is None:
        raise InvalidInputError("wte models need 'influence' and 'unit_costs' (or a --matrix file)")
    return GeneralWTE(np.asarray(values["influence"], dtype=float),
                      np.asarray(values["unit_costs"], dtype=float))


_BUILDERS: Dict[GameFamily, Tuple[Tuple[str, ...], Callable[[Mapping[str, Any]], GameModel]]] = {
    GameFamily.SELF_DEPENDENCE: (
        ("a", "n", "c"),
        lambda p: SelfDependence(_real(p, "a"), _count(p, "n"), _real(p, "c")),
    ),
    GameFamily.TWO_CLASS: (
        ("a1", "a2", "n1", "n2", "c"),
        lambda p: TwoClass(_real(p, "a1"), _real(p, "a2"), _count(p, "n1"),
                           _count(p, "n2"), _real(p, "c")),
    ),
    GameFamily.DOMINANT: (
        ("a", "n", "c"),
        lambda p: Dominant(_real(p, "a"), _count(p, "n"), _real(p, "c")),
    ),
    GameFamily.STAR: (
        ("n", "c", "risk"),
        lambda p: Star(_count(p, "n"), _real(p, "c"), p.get("risk") or "exp"),
    ),
    GameFamily.WEAKEST_LINK: (
        ("n", "rho", "c"),
        lambda p: WeakestLink(_count(p, "n"), _real(p, "rho"), _real(p, "c")),
    ),
    GameFamily.GENERAL_WTE: (
        ("influence", "unit_costs", "matrix"),
        _general_wte,
    ),
}


def parse_family(name: str) -> GameFamily:
    try:
        return GameFamily(str(name).lower())
    except ValueError as e:
        known = ", ".join(f.value for f in GameFamily)
        raise InvalidInputError(f"unknown model family '{name}' (known: {known})") from e


def family_parameters(family: GameFamily) -> Tuple[str, ...]:
    """Names of the parameters a family is built from."""
    return _BUILDERS[family][0]


def build_model(family: Any, params: Mapping[str, Any]) -> GameModel:
    """
    Build a game model from a flat parameter mapping.

    Args:
        family: Family name ('selfdep', 'twoclass', ...) or GameFamily
        params: Parameter values; counts may be given as integral floats

    Returns:
        The validated model

    Raises:
        InvalidInputError: If a parameter is missing or violates the family's assumptions

    Example:
        >>> build_model("selfdep", {"a": 10, "n": 6, "c": 1})
        SelfDependence(a=10.0, n=6, c=1.0)
    """
    resolved = family if isinstance(family, GameFamily) else parse_family(family)
    return _BUILDERS[resolved][1](params)
