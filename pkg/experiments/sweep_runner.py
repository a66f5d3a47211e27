"""
Sweep Runner

Evaluates a SweepConfig point by point: social optimum, exit equilibria,
Pivotal budget, Externality participation benefits per user block and the
price of anarchy. Points are evaluated in a process pool and collected in
sweep order, so the CSV does not depend on the number of workers.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from pathlib import Path
from typing import Any, Dict, List, Optional

import pandas as pd

from analysis.anarchy import price_of_anarchy
from core.config import LabConfig, default_config
from core.errors import InvalidInputError, SolverFailureError
from core.logger import logger
from core.services.model_factory import build_model
from experiments.sweep_config import SweepConfig
from mechanisms.externality import externality_equilibrium_taxes
from mechanisms.pivotal import pivotal_taxes
from solver.exit_equilibria import all_exit_equilibria
from solver.social_optimum import social_optimum

STATUS_OK = "ok"
STATUS_SOLVER_FAILURE = "solver-failure"

FIXED_COLUMNS = ("case_labels", "pivotal_budget")
TRAILING_COLUMNS = ("price_of_anarchy", "status")


def evaluate_point(config: SweepConfig, value: float,
                   lab_config: Optional[LabConfig] = None) -> Optional[Dict[str, Any]]:
    """
    One CSV row, or None when the point violates the family's assumptions.

    Solver failures are kept as rows with status `solver-failure`.
    """
    lab_config = lab_config or default_config()
    try:
        model = build_model(config.family, config.point_parameters(value))
    except InvalidInputError as e:
        logger.sweep('SWEEP', 'Skipping invalid point', {config.parameter: value, 'reason': str(e)})
        return None

    row: Dict[str, Any] = {config.parameter: value}
    try:
        x_star, _ = social_optimum(model, lab_config)
        exits = all_exit_equilibria(model, lab_config)
        pivotal = pivotal_taxes(model, config.selection, exits, x_star, lab_config)
        externality = externality_equilibrium_taxes(model, x_star, config.selection, exits, lab_config)
        poa = price_of_anarchy(model, lab_config)
    except SolverFailureError as e:
        logger.solver('SWEEP', 'Solver failure at sweep point', {
            config.parameter: value, 'error': str(e), 'residuals': e.residuals,
        })
        row.update(case_labels="", pivotal_budget=math.nan, price_of_anarchy=math.nan,
                   status=STATUS_SOLVER_FAILURE)
        for block in model.blocks():
            row[f"benefit_{block.name}"] = math.nan
        return row

    labels = []
    for block in model.blocks():
        user = block.representative
        labels.append(f"{block.name}={exits[user][pivotal.selected_exit[user]].case_label}")
        row[f"benefit_{block.name}"] = externality.participation_benefit[user]
    row.update(case_labels="|".join(labels), pivotal_budget=pivotal.budget,
               price_of_anarchy=poa, status=STATUS_OK)
    return row


def _ordered_columns(config: SweepConfig, rows: List[Dict[str, Any]]) -> List[str]:
    benefits: List[str] = []
    for row in rows:
        benefits.extend(k for k in row if k.startswith("benefit_") and k not in benefits)
    return [config.parameter, *FIXED_COLUMNS, *benefits, *TRAILING_COLUMNS]


def run_sweep(config: SweepConfig, output: Optional[Path] = None,
              lab_config: Optional[LabConfig] = None) -> pd.DataFrame:
    """
    Evaluate every point of a sweep and write the CSV when an output is set.

    Args:
        config: Sweep description
        output: CSV path; falls back to config.output

    Returns:
        DataFrame with one row per valid point, in sweep order
    """
    lab_config = lab_config or default_config()
    values = config.values()
    workers = config.workers or lab_config.sweep_workers
    logger.sweep('SWEEP', 'Starting sweep', {
        'family': config.family.value, 'parameter': config.parameter,
        'points': len(values), 'workers': workers,
    })

    evaluate = partial(evaluate_point, config, lab_config=lab_config)
    if workers == 1:
        results = list(map(evaluate, values))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(evaluate, values))

    rows = [row for row in results if row is not None]
    frame = pd.DataFrame(rows, columns=_ordered_columns(config, rows))
    failures = int((frame["status"] == STATUS_SOLVER_FAILURE).sum())
    logger.sweep('SWEEP', 'Sweep finished', {
        'rows': len(frame), 'skipped': len(values) - len(rows), 'solver_failures': failures,
    })

    destination = output or config.output
    if destination is not None:
        write_csv(frame, Path(destination), lab_config)
    return frame


def write_csv(frame: pd.DataFrame, path: Path, lab_config: Optional[LabConfig] = None) -> Path:
    lab_config = lab_config or default_config()
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=f"%.{lab_config.csv_significant_digits}g",
                 lineterminator="\n")
    logger.info('SWEEP', f'Wrote {len(frame)} rows to {path}')
    return path
