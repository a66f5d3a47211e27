"""
Sweep Command

Runs a preset or configured parameter sweep, writes the CSV and optionally
the plot script.
"""

import argparse
from pathlib import Path
from typing import Any, Dict

from core.errors import InvalidInputError
from experiments.plot_script import emit_plot_script
from experiments.presets import PRESETS, preset_config
from experiments.sweep_config import SweepConfig
from experiments.sweep_runner import run_sweep
from mechanisms.types import EESelection
from .base_command import BaseCommand, add_model_arguments

_RUN_OPTIONS = ("preset", "plot")


class SweepCommand(BaseCommand):
    """Command to run parameter sweeps."""

    @property
    def name(self) -> str:
        return "sweep"

    @property
    def description(self) -> str:
        return "Run a sweep (--preset fig2..fig7 or --config FILE) and write CSV."

    def configure(self, parser: argparse.ArgumentParser):
        parser.add_argument("--preset", choices=sorted(PRESETS))
        parser.add_argument("--output", help="CSV path (default: <preset>.csv)")
        parser.add_argument("--plot", action="store_const", const=True,
                            help="also emit a matplotlib plot script")
        parser.add_argument("--workers", type=int)
        parser.add_argument("--parameter")
        parser.add_argument("--start", type=float)
        parser.add_argument("--stop", type=float)
        parser.add_argument("--steps", type=int)
        parser.add_argument("--scale", choices=["linear", "log"])
        parser.add_argument("--selection", choices=[s.value for s in EESelection])
        add_model_arguments(parser)

    def handle(self, options: Dict[str, Any]) -> Dict[str, Any]:
        preset = options.get("preset")
        plot = bool(options.get("plot"))
        overrides = {k: v for k, v in options.items() if k not in _RUN_OPTIONS}
        if preset:
            config = preset_config(preset, **overrides)
        elif options.get("family"):
            config = SweepConfig.from_flat(overrides)
        else:
            raise InvalidInputError("sweep needs --preset or a sweep --config")

        output = Path(config.output or f"{config.preset or config.family.value}.csv")
        frame = run_sweep(config, output)
        result: Dict[str, Any] = {
            "config": config.to_flat(),
            "csv": output,
            "rows": len(frame),
            "solver_failures": int((frame["status"] != "ok").sum()),
        }
        if plot:
            result["plot_script"] = emit_plot_script(output, config.preset)
        return result
