"""
Tax mechanisms and their participation and budget checks.
"""

from mechanisms.externality import externality_equilibrium_taxes, externality_outcome
from mechanisms.pivotal import pivotal_taxes
from mechanisms.types import EESelection, MechanismReport, Message
from mechanisms.verdicts import check_bb, check_vp, participation_benefits, select_exit_equilibrium

__all__ = [
    'pivotal_taxes',
    'externality_equilibrium_taxes',
    'externality_outcome',
    'check_bb',
    'check_vp',
    'participation_benefits',
    'select_exit_equilibrium',
    'EESelection',
    'MechanismReport',
    'Message',
]
