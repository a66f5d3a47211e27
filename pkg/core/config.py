"""
Numerical configuration of the laboratory.

Values are resolved with the following precedence:
1. Constructor arguments
2. config.json file
3. Environment variables (LAB_<FIELD>)
4. Default values
"""

import json
import os
from dataclasses import dataclass, fields
from functools import lru_cache
from typing import Any, Optional

from core.errors import InvalidInputError
from core.logger import logger


@dataclass
class LabConfig:
    """
    Tolerances and iteration budgets shared by solvers, mechanisms and sweeps.

    Loads settings from config.json (if present), environment variables, or defaults.
    """

    # Verdict tolerances
    vp_tolerance: Optional[float] = None
    bb_tolerance: Optional[float] = None
    budget_identity_tolerance: Optional[float] = None

    # Optimality certificates
    kkt_stationarity_tolerance: Optional[float] = None
    kkt_slackness_tolerance: Optional[float] = None

    # Root finding
    bisection_xtol: Optional[float] = None
    bisection_max_iterations: Optional[int] = None
    root_scan_samples: Optional[int] = None

    # Iterative solvers
    pgd_tolerance: Optional[float] = None
    pgd_max_iterations: Optional[int] = None
    best_response_max_iterations: Optional[int] = None
    exit_iteration_limit: Optional[int] = None
    support_enumeration_max_users: Optional[int] = None

    # Sweeps
    sweep_workers: Optional[int] = None
    csv_significant_digits: Optional[int] = None

    config_path: str = os.path.join(os.path.dirname(__file__), "config.json")

    _DEFAULTS = {
        "vp_tolerance": (1e-9, float),
        "bb_tolerance": (1e-9, float),
        "budget_identity_tolerance": (1e-9, float),
        "kkt_stationarity_tolerance": (1e-8, float),
        "kkt_slackness_tolerance": (1e-9, float),
        "bisection_xtol": (1e-10, float),
        "bisection_max_iterations": (500, int),
        "root_scan_samples": (256, int),
        "pgd_tolerance": (1e-9, float),
        "pgd_max_iterations": (100000, int),
        "best_response_max_iterations": (10000, int),
        "exit_iteration_limit": (500, int),
        "support_enumeration_max_users": (12, int),
        "sweep_workers": (1, int),
        "csv_significant_digits": (12, int),
    }

    def __post_init__(self):
        """Load configuration from JSON/Env/Defaults after initialization."""
        file_config = {}
        if self.config_path and os.path.exists(self.config_path):
            try:
                with open(self.config_path, 'r') as f:
                    file_config = json.load(f)
            except (OSError, json.JSONDecodeError) as e:
                logger.warning('CONFIG', f"Failed to load {self.config_path}", {'error': str(e)})

        def resolve(field_name: str, env_var: str, default: Any, cast_type: type):
            current_value = getattr(self, field_name)
            if current_value is not None:
                return cast_type(current_value)

            if file_config.get(field_name) is not None:
                return cast_type(file_config[field_name])

            env_val = os.getenv(env_var)
            if env_val:
                try:
                    return cast_type(env_val)
                except (ValueError, TypeError):
                    pass

            return default

        for name, (default, cast_type) in self._DEFAULTS.items():
            setattr(self, name, resolve(name, f"LAB_{name.upper()}", default, cast_type))

        self._validate()

    def _validate(self):
        for name in self._DEFAULTS:
            if getattr(self, name) <= 0:
                raise InvalidInputError(f"{name} must be positive, got {getattr(self, name)}")
        if self.csv_significant_digits > 17:
            raise InvalidInputError("csv_significant_digits cannot exceed 17")

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self) if f.name != "config_path"}


@lru_cache(maxsize=1)
def default_config() -> LabConfig:
    """Shared configuration used when an operation receives none."""
    return LabConfig()
