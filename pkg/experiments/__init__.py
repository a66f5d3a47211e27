"""
Parameter sweeps: configuration, presets, runner and plot-script emitter.
"""

from experiments.plot_script import emit_plot_script
from experiments.presets import PRESETS, preset_config
from experiments.sweep_config import SweepConfig
from experiments.sweep_runner import evaluate_point, run_sweep

__all__ = [
    'SweepConfig',
    'PRESETS',
    'preset_config',
    'run_sweep',
    'evaluate_point',
    'emit_plot_script',
]
