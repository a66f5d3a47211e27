"""
Externality Mechanism

Users announce messages (proposal chi_i, prices pi_i); the mechanism invests
the mean proposal and charges cyclic taxes that always balance. At its
equilibrium every user pays for the externalities it imposes at the optimum:

    t_i = -sum_j x*_j d f_i/d x_j (x*) - c_i x*_i.
"""

from typing import Optional, Sequence, Tuple

import numpy as np

from core.config import LabConfig, default_config
from core.domain.game_model import GameModel
from core.domain.profiles import InvestmentProfile, Mechanism, TaxProfile
from core.errors import ConsistencyError, InvalidInputError
from core.logger import logger
from core.services.costs import as_levels, risk_sensitivities
from mechanisms.types import EESelection, MechanismReport, Message
from mechanisms.verdicts import Selection, build_report, resolve_selection
from solver.exit_equilibria import all_exit_equilibria
from solver.kkt import certify
from solver.social_optimum import social_optimum
from solver.types import ExitEquilibrium

_MIN_USERS = 3


def externality_outcome(messages: Sequence[Message]) -> Tuple[InvestmentProfile, TaxProfile]:
    """
    Investment and taxes the Externality mechanism assigns to a message profile.

    Indices wrap around: user i is charged the price difference of users
    i+1 and i+2 on the outcome, plus quadratic penalties for disagreeing
    with its successor.

    Raises:
        InvalidInputError: If fewer than three users or inconsistent message lengths
    """
    n = len(messages)
    if n < _MIN_USERS:
        raise InvalidInputError(f"the Externality mechanism needs at least {_MIN_USERS} users, got {n}")
    if any(m.dimension != n for m in messages):
        raise InvalidInputError(f"every message must have length {n}")

    proposals = np.stack([m.proposal for m in messages])
    prices = np.stack([m.prices for m in messages])
    outcome = proposals.mean(axis=0)

    gaps = proposals - np.roll(proposals, -1, axis=0)
    penalties = np.einsum('ik,ik,ik->i', gaps, prices, gaps)
    price_gaps = np.roll(prices, -1, axis=0) - np.roll(prices, -2, axis=0)
    taxes = price_gaps @ outcome + penalties - np.roll(penalties, -1)

    return InvestmentProfile(outcome), TaxProfile(taxes, Mechanism.EXTERNALITY)


def externality_equilibrium_taxes(model: GameModel, x_star: Optional[InvestmentProfile] = None,
                                  selection: Selection = EESelection.FIRST,
                                  exits: Optional[Sequence[Sequence[ExitEquilibrium]]] = None,
                                  config: Optional[LabConfig] = None) -> MechanismReport:
    """
    Equilibrium taxes of the Externality mechanism at the social optimum.

    Args:
        model: Game model
        x_star: Social optimum; computed when omitted
        selection: Exit-equilibrium policy for the VP verdicts
        exits: Precomputed exit equilibria per outlier

    Raises:
        InvalidInputError: If x_star fails the KKT check for the social cost
        ConsistencyError: If the taxes miss budget balance by more than
            `budget_identity_tolerance`
    """
    config = config or default_config()
    if x_star is None:
        x_star, _ = social_optimum(model, config)
    certificate = certify(x_star, model, None, config)
    if not certificate.is_valid:
        raise InvalidInputError(f"x_star is not a social optimum: {certificate.to_dict()}")

    levels = as_levels(x_star, model)
    taxes = -(risk_sensitivities(levels, model) @ levels) - model.unit_costs() * levels
    # Stationarity of x* makes these taxes sum to zero.
    tolerance = config.budget_identity_tolerance
    budget = float(np.sum(taxes))
    if abs(budget) > tolerance * max(1.0, float(np.sum(np.abs(taxes)))):
        logger.solver('EXTERNALITY', 'Taxes do not balance at the optimum', {
            'model': model.describe(), 'budget': budget, 'tolerance': tolerance,
        })
        raise ConsistencyError(f"externality taxes sum to {budget:.3g} at the social optimum",
                               {"budget": budget})
    profile = TaxProfile(taxes, Mechanism.EXTERNALITY, tolerance)

    if exits is None:
        exits = all_exit_equilibria(model, config)
    selected = resolve_selection(model, exits, selection)
    report = build_report(model, Mechanism.EXTERNALITY, profile, x_star, exits, selected, config)
    logger.debug('EXTERNALITY', 'Equilibrium taxes', {
        'model': model.describe(), 'taxes': report.taxes, 'budget': report.budget,
    })
    return report
