"""
Mechanism Command

Pivotal or Externality taxes of a model with their budget and participation verdicts.
"""

import argparse
from typing import Any, Dict

from core.errors import InvalidInputError
from mechanisms.externality import externality_equilibrium_taxes
from mechanisms.pivotal import pivotal_taxes
from mechanisms.types import EESelection, MechanismReport
from .base_command import BaseCommand, add_model_arguments, model_from_options


class MechanismCommand(BaseCommand):
    """Command to compute mechanism taxes."""

    @property
    def name(self) -> str:
        return "mechanism"

    @property
    def description(self) -> str:
        return "Pivotal or Externality taxes with BB and VP verdicts."

    def configure(self, parser: argparse.ArgumentParser):
        parser.add_argument("--which", choices=["pivotal", "externality"])
        parser.add_argument("--selection", choices=[s.value for s in EESelection],
                            help="exit-equilibrium selection (default: first)")
        add_model_arguments(parser)

    def handle(self, options: Dict[str, Any]) -> MechanismReport:
        which = options.get("which")
        if which not in ("pivotal", "externality"):
            raise InvalidInputError("--which must be pivotal or externality")
        model = model_from_options(options)
        selection = EESelection(options.get("selection", EESelection.FIRST.value))
        if which == "pivotal":
            return pivotal_taxes(model, selection)
        return externality_equilibrium_taxes(model, selection=selection)
