"""
Solve Command

Social optimum, Nash equilibria, exit equilibria and price of anarchy of one model.
"""

import argparse
from typing import Any, Dict

from analysis.anarchy import price_of_anarchy
from core.services.costs import social_cost
from solver.exit_equilibria import exit_equilibria
from solver.kkt import verify_exit_equilibrium
from solver.nash import nash_equilibria
from solver.oracle import brute_force_social_optimum
from solver.social_optimum import social_optimum
from .base_command import BaseCommand, add_model_arguments, model_from_options


class SolveCommand(BaseCommand):
    """Command to solve one game model."""

    @property
    def name(self) -> str:
        return "solve"

    @property
    def description(self) -> str:
        return "Solve a model: social optimum, Nash and exit equilibria."

    def configure(self, parser: argparse.ArgumentParser):
        add_model_arguments(parser)
        parser.add_argument("--outlier", type=int, help="only this outlier's exit equilibria")
        parser.add_argument("--oracle-steps", type=int, help="also run the grid oracle (N <= 4)")
        parser.add_argument("--oracle-bound", type=float, help="grid upper bound (default 2 max x*)")
        parser.add_argument("--workers", type=int, help="oracle worker processes")

    def handle(self, options: Dict[str, Any]) -> Dict[str, Any]:
        model = model_from_options(options)
        x_star, certificate = social_optimum(model)
        equilibria = nash_equilibria(model)

        outliers = [options["outlier"]] if options.get("outlier") is not None else range(model.n_users)
        exits = {}
        for outlier in outliers:
            rows = []
            for equilibrium in exit_equilibria(model, outlier):
                residual, group = verify_exit_equilibrium(model, equilibrium)
                rows.append({**equilibrium.to_dict(), "outlier_residual": residual,
                             "group_certificate_valid": group.is_valid})
            exits[str(outlier)] = rows

        result = {
            "model": model.parameters(),
            "social_optimum": x_star.as_list(),
            "social_cost": social_cost(x_star, model),
            "certificate": certificate.to_dict(),
            "nash_equilibria": [ne.as_list() for ne in equilibria],
            "price_of_anarchy": price_of_anarchy(model),
            "exit_equilibria": exits,
        }

        if options.get("oracle_steps"):
            bound = options.get("oracle_bound") or max(1.0, 2 * max(x_star.levels))
            oracle = brute_force_social_optimum(model, bound, options["oracle_steps"],
                                                reference=x_star, workers=options.get("workers", 1))
            result["oracle"] = {"profile": oracle.as_list(), "social_cost": social_cost(oracle, model)}
        return result
