"""
Named preset sweeps over the self-dependence, two-class and dominant families.
"""

from typing import Any, Dict

from core.errors import InvalidInputError
from experiments.sweep_config import COST_RATIO, SweepConfig

PRESETS: Dict[str, Dict[str, Any]] = {
    # Self-dependence, varying the cost through a/c.
    "fig2": {"family": "selfdep", "parameter": COST_RATIO, "start": 1.05, "stop": 3.0,
             "steps": 40, "a": 10, "n": 6},
    "fig3": {"family": "selfdep", "parameter": "a", "start": 1.0, "stop": 10.0,
             "steps": 91, "n": 6, "c": 1},
    "fig4": {"family": "selfdep", "parameter": "n", "start": 3, "stop": 20,
             "steps": 18, "a": 6, "c": 1},
    # Two-class, weak (fig5) and strong (fig6) reliance of the second class.
    "fig5": {"family": "twoclass", "parameter": "a1", "start": 1.0, "stop": 10.0,
             "steps": 91, "a2": 0.1, "n1": 8, "n2": 2, "c": 0.05},
    "fig6": {"family": "twoclass", "parameter": "a1", "start": 1.0, "stop": 10.0,
             "steps": 91, "a2": 0.9, "n1": 8, "n2": 2, "c": 0.05},
    "fig7": {"family": "dominant", "parameter": "a", "start": 1.0, "stop": 15.0,
             "steps": 57, "n": 10, "c": 0.45},
}


def preset_config(name: str, **overrides: Any) -> SweepConfig:
    """
    Sweep configuration of a preset, with optional overrides (output, workers, ...).

    Raises:
        InvalidInputError: If the preset is unknown
    """
    if name not in PRESETS:
        raise InvalidInputError(f"unknown preset '{name}' (known: {', '.join(PRESETS)})")
    flat = dict(PRESETS[name], preset=name)
    flat.update({k: v for k, v in overrides.items() if v is not None})
    return SweepConfig.from_flat(flat)
