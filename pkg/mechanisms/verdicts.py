"""
Voluntary participation and budget balance checks, and exit-equilibrium selection.
"""

from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from core.config import LabConfig, default_config
from core.domain.game_model import GameModel
from core.domain.profiles import InvestmentProfile, Mechanism, TaxProfile
from core.errors import InvalidInputError
from core.services.costs import user_costs
from mechanisms.types import EESelection, MechanismReport
from solver.types import ExitEquilibrium

Selection = Union[EESelection, str, Sequence[int]]


def check_bb(taxes: Union[TaxProfile, MechanismReport, Sequence[float]],
             config: Optional[LabConfig] = None) -> Tuple[bool, float]:
    """(budget >= -tolerance, budget)."""
    config = config or default_config()
    if isinstance(taxes, TaxProfile):
        budget = taxes.budget
    elif isinstance(taxes, MechanismReport):
        budget = float(np.sum(taxes.taxes))
    else:
        budget = float(np.sum(np.asarray(taxes, dtype=float)))
    return budget >= -config.bb_tolerance, budget


def _tax_vector(taxes: Union[TaxProfile, MechanismReport, Sequence[float]]) -> np.ndarray:
    if isinstance(taxes, TaxProfile):
        return taxes.taxes
    if isinstance(taxes, MechanismReport):
        return np.asarray(taxes.taxes, dtype=float)
    return np.asarray(taxes, dtype=float)


def participation_benefits(model: GameModel, taxes, x_star: InvestmentProfile,
                           exits: Sequence[Sequence[ExitEquilibrium]]) -> List[List[float]]:
    """g_i(exit) - [g_i(x*) + t_i] for every user and each of its exit equilibria."""
    tax_vector = _tax_vector(taxes)
    if tax_vector.shape != (model.n_users,) or len(exits) != model.n_users:
        raise InvalidInputError("taxes and exit equilibria must cover every user")
    inside = user_costs(x_star, model) + tax_vector
    return [
        [float(user_costs(e.profile, model)[i] - inside[i]) for e in exits[i]]
        for i in range(model.n_users)
    ]


def check_vp(model: GameModel, taxes, x_star: InvestmentProfile,
             exits: Sequence[Sequence[ExitEquilibrium]],
             config: Optional[LabConfig] = None) -> List[List[bool]]:
    """
    Voluntary participation of every user against each of its exit equilibria.

    Holds when g_i(x*) + t_i <= g_i(exit) + tolerance.
    """
    config = config or default_config()
    return [[benefit >= -config.vp_tolerance for benefit in row]
            for row in participation_benefits(model, taxes, x_star, exits)]


def select_exit_equilibrium(model: GameModel, equilibria: Sequence[ExitEquilibrium],
                            policy: Union[EESelection, str]) -> int:
    """Index of the exit equilibrium `policy` picks for this outlier."""
    if not equilibria:
        raise InvalidInputError("cannot select from an empty list of exit equilibria")
    try:
        policy = EESelection(policy)
    except ValueError as e:
        raise InvalidInputError(f"unknown exit-equilibrium selection '{policy}'") from e
    if policy is EESelection.FIRST or len(equilibria) == 1:
        return 0
    outlier = equilibria[0].outlier
    outlier_costs = [float(user_costs(e.profile, model)[outlier]) for e in equilibria]
    if policy is EESelection.LEAST_BENEFICIAL:
        return int(np.argmax(outlier_costs))
    return int(np.argmin(outlier_costs))


def resolve_selection(model: GameModel, exits: Sequence[Sequence[ExitEquilibrium]],
                      selection: Selection) -> List[int]:
    """Selected exit-equilibrium index per outlier."""
    if isinstance(selection, (EESelection, str)):
        return [select_exit_equilibrium(model, eqs, selection) for eqs in exits]
    chosen = [int(k) for k in selection]
    if len(chosen) != len(exits) or any(not 0 <= k < len(eqs) for k, eqs in zip(chosen, exits)):
        raise InvalidInputError(f"explicit exit selection {chosen} does not match the equilibria")
    return chosen


def build_report(model: GameModel, mechanism: Mechanism, taxes: TaxProfile,
                 x_star: InvestmentProfile, exits: Sequence[Sequence[ExitEquilibrium]],
                 selected: Sequence[int], config: Optional[LabConfig] = None) -> MechanismReport:
    """Assemble a MechanismReport with budget and participation verdicts."""
    config = config or default_config()
    benefits = participation_benefits(model, taxes, x_star, exits)
    bb_verdict, budget = check_bb(taxes, config)
    return MechanismReport(
        mechanism=mechanism,
        model=model.parameters(),
        social_optimum=x_star.as_list(),
        taxes=taxes.as_list(),
        budget=budget,
        bb_verdict=bb_verdict,
        selected_exit=list(selected),
        exit_cases=[[e.case_label for e in eqs] for eqs in exits],
        participation_benefit=[row[k] for row, k in zip(benefits, selected)],
        per_exit_benefit=benefits,
        vp_verdicts=[[b >= -config.vp_tolerance for b in row] for row in benefits],
    )
