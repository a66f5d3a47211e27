"""
Batch Cross-Validation

Samples random models, computes mechanism verdicts numerically and compares
them with the regime tables. Samples are drawn up front from a seeded
generator and evaluated in a process pool; results come back in sample order.
"""

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from analysis.regimes import classify_dominant, classify_self_dependence
from analysis.types import CrossValidationMismatch, RegimeVerdict, Verdict
from core.config import LabConfig, default_config
from core.domain.game_model import Dominant, GameModel, SelfDependence
from core.errors import InvalidInputError
from core.logger import logger
from mechanisms.externality import externality_equilibrium_taxes
from mechanisms.pivotal import pivotal_taxes
from solver.exit_equilibria import all_exit_equilibria
from solver.social_optimum import social_optimum

Sample = Tuple[float, int, float]

# Samples whose regime condition is this close to its boundary are skipped.
_BOUNDARY_MARGIN = 1e-6


def _log_uniform(rng: np.random.Generator, low: float, high: float) -> float:
    return float(np.exp(rng.uniform(np.log(low), np.log(high))))


def sample_self_dependence(samples: int, seed: int) -> List[Sample]:
    """(a, n, c) with a log-uniform in [0.05, 20] away from 1, n in 3..20, c/a in [0.001, 0.95]."""
    rng = np.random.default_rng(seed)
    drawn: List[Sample] = []
    while len(drawn) < samples:
        a = _log_uniform(rng, 0.05, 20.0)
        if abs(a - 1) < 0.05:
            continue
        n = int(rng.integers(3, 21))
        c = a * _log_uniform(rng, 0.001, 0.95)
        drawn.append((a, n, c))
    return drawn


def sample_dominant(samples: int, seed: int) -> List[Sample]:
    """(a, n, c) with a in [1.05, 20], n in 3..20 and c below the dominant user's weight."""
    rng = np.random.default_rng(seed)
    drawn: List[Sample] = []
    for _ in range(samples):
        a = _log_uniform(rng, 1.05, 20.0)
        n = int(rng.integers(3, 21))
        c = a * _log_uniform(rng, 0.001, 0.95)
        drawn.append((a, n, c))
    return drawn


def _observed(holds: bool) -> Verdict:
    return Verdict.ALWAYS if holds else Verdict.NEVER


def _near_boundary(verdict: RegimeVerdict) -> bool:
    return any(abs(check.lhs - check.rhs) < _BOUNDARY_MARGIN * max(1.0, abs(check.rhs))
               for check in verdict.conditions)


def _compare(model: GameModel, verdict: RegimeVerdict, selection: List[int], exits, x_star,
             config: LabConfig) -> List[CrossValidationMismatch]:
    pivotal = pivotal_taxes(model, selection, exits, x_star, config)
    externality = externality_equilibrium_taxes(model, x_star, selection, exits, config)
    observed = [
        ("pivotal budget balance", verdict.bb_pivotal, _observed(pivotal.bb_verdict), pivotal.budget),
        ("externality participation", verdict.vp_externality,
         _observed(all(externality.vp_selected)), min(externality.participation_benefit)),
    ]
    return [
        CrossValidationMismatch(parameters=model.parameters(), case_label=verdict.case_label,
                                quantity=quantity, expected=expected.value,
                                observed=seen.value, value=value)
        for quantity, expected, seen, value in observed if expected is not seen
    ]


def check_self_dependence(sample: Sample, config: Optional[LabConfig] = None) -> List[CrossValidationMismatch]:
    """Compare every regime of one SelfDependence sample against the mechanisms."""
    config = config or default_config()
    a, n, c = sample
    model = SelfDependence(a, n, c)
    x_star, _ = social_optimum(model, config)
    exits = all_exit_equilibria(model, config)
    mismatches: List[CrossValidationMismatch] = []
    for verdict in classify_self_dependence(a, n, c):
        if _near_boundary(verdict):
            continue
        labels = [[e.case_label for e in eqs] for eqs in exits]
        if any(verdict.case_label not in row for row in labels):
            mismatches.append(CrossValidationMismatch(
                parameters=model.parameters(), case_label=verdict.case_label,
                quantity="exit equilibrium", expected="present", observed="missing",
            ))
            continue
        selection = [row.index(verdict.case_label) for row in labels]
        mismatches.extend(_compare(model, verdict, selection, exits, x_star, config))
    return mismatches


def check_dominant(sample: Sample, config: Optional[LabConfig] = None) -> List[CrossValidationMismatch]:
    """Compare the regime of one Dominant sample against the mechanisms."""
    config = config or default_config()
    a, n, c = sample
    model = Dominant(a, n, c)
    verdict = classify_dominant(a, n, c)
    if _near_boundary(verdict):
        return []
    x_star, _ = social_optimum(model, config)
    exits = all_exit_equilibria(model, config)
    return _compare(model, verdict, [0] * model.n_users, exits, x_star, config)


def _run(check: Callable[[Sample], List[CrossValidationMismatch]], drawn: Sequence[Sample],
         workers: int, topic: str) -> List[CrossValidationMismatch]:
    if workers < 1:
        raise InvalidInputError(f"workers must be at least 1, got {workers}")
    if workers == 1:
        results = list(map(check, drawn))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(check, drawn))
    mismatches = [m for found in results for m in found]
    logger.sweep('CROSSCHECK', f'{topic} cross-validation done', {
        'samples': len(drawn), 'mismatches': len(mismatches),
    })
    return mismatches


def cross_validate_self_dependence(samples: int = 200, seed: int = 0,
                                   workers: int = 1) -> List[CrossValidationMismatch]:
    """Mismatches between the self-dependence regime table and numerical verdicts."""
    return _run(check_self_dependence, sample_self_dependence(samples, seed), workers, 'Self-dependence')


def cross_validate_dominant(samples: int = 200, seed: int = 0,
                            workers: int = 1) -> List[CrossValidationMismatch]:
    """Mismatches between the dominant-user regime table and numerical verdicts."""
    return _run(check_dominant, sample_dominant(samples, seed), workers, 'Dominant')
