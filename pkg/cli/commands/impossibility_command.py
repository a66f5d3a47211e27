"""
Impossibility Command
"""

import argparse
from typing import Any, Dict

from analysis.impossibility import star_impossibility, weakest_link_impossibility
from analysis.types import ImpossibilityReport
from core.errors import InvalidInputError
from .base_command import BaseCommand


class ImpossibilityCommand(BaseCommand):
    """Command to report VP tax caps of the star and weakest-link topologies."""

    @property
    def name(self) -> str:
        return "impossibility"

    @property
    def description(self) -> str:
        return "VP tax caps of the star or weakest-link topology."

    def configure(self, parser: argparse.ArgumentParser):
        parser.add_argument("--which", choices=["star", "weakestlink"])
        parser.add_argument("--n", type=float, help="number of users (real allowed for weakestlink)")
        parser.add_argument("--c", type=float)
        parser.add_argument("--rho", type=float)
        parser.add_argument("--risk", choices=["exp", "reciprocal"])

    def handle(self, options: Dict[str, Any]) -> ImpossibilityReport:
        which = options.get("which")
        n, c = options.get("n"), options.get("c")
        if n is None or c is None:
            raise InvalidInputError("--n and --c are required")
        if which == "star":
            if not float(n).is_integer():
                raise InvalidInputError(f"star topology needs an integer n, got {n}")
            return star_impossibility(int(n), c, options.get("risk", "exp"))
        if which == "weakestlink":
            if options.get("rho") is None:
                raise InvalidInputError("--rho is required for weakestlink")
            return weakest_link_impossibility(n, options["rho"], c)
        raise InvalidInputError("--which must be star or weakestlink")
