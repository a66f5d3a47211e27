"""
Classify Command

Regime of a self-dependence, dominant or two-class model, or a batch
cross-validation of the regime tables.
"""

import argparse
from typing import Any, Dict

from analysis.cross_validation import cross_validate_dominant, cross_validate_self_dependence
from analysis.regimes import classify_dominant, classify_self_dependence, two_class_exit_conditions
from core.domain.game_model import GameFamily
from core.errors import InvalidInputError
from core.services.model_factory import parse_family
from .base_command import BaseCommand, add_model_arguments, model_from_options


class ClassifyCommand(BaseCommand):
    """Command to classify regimes."""

    @property
    def name(self) -> str:
        return "classify"

    @property
    def description(self) -> str:
        return "Regime verdicts (selfdep, dominant, twoclass) or --cross-validate K."

    def configure(self, parser: argparse.ArgumentParser):
        add_model_arguments(parser)
        parser.add_argument("--cross-validate", type=int, metavar="K",
                            help="check K random models against the regime table")
        parser.add_argument("--seed", type=int)
        parser.add_argument("--workers", type=int)

    def handle(self, options: Dict[str, Any]) -> Any:
        family = parse_family(options.get("family") or "")
        if options.get("cross_validate") is not None:
            return self._cross_validate(family, options)

        model = model_from_options(options)
        if family is GameFamily.SELF_DEPENDENCE:
            return classify_self_dependence(model.a, model.n, model.c)
        if family is GameFamily.DOMINANT:
            return classify_dominant(model.a, model.n, model.c)
        if family is GameFamily.TWO_CLASS:
            return two_class_exit_conditions(model.a1, model.a2, model.n1, model.n2, model.c)
        raise InvalidInputError(f"no regime classifier for {family.value}")

    @staticmethod
    def _cross_validate(family: GameFamily, options: Dict[str, Any]) -> Dict[str, Any]:
        samples = options["cross_validate"]
        if samples < 1:
            raise InvalidInputError("--cross-validate needs a positive sample count")
        seed, workers = options.get("seed", 0), options.get("workers", 1)
        if family is GameFamily.SELF_DEPENDENCE:
            mismatches = cross_validate_self_dependence(samples, seed, workers)
        elif family is GameFamily.DOMINANT:
            mismatches = cross_validate_dominant(samples, seed, workers)
        else:
            raise InvalidInputError(f"no cross-validation for {family.value}")
        return {"family": family.value, "samples": samples, "seed": seed,
                "mismatches": mismatches}
