"""
Plot Script Emitter

Writes a standalone pandas + matplotlib script next to a sweep CSV. The
script draws three panels against the swept parameter: participation
benefit per user block, Pivotal budget and price of anarchy.
"""

from pathlib import Path
from string import Template
from typing import List, Optional

import pandas as pd

from core.errors import InvalidInputError
from core.logger import logger
from experiments.presets import PRESETS
from experiments.sweep_runner import FIXED_COLUMNS, TRAILING_COLUMNS

_SCRIPT = Template('''"""Plot of ${title}, generated from ${csv_name}."""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd

HERE = Path(__file__).resolve().parent
CSV = HERE / "${csv_name}"
X = "${x_column}"
BENEFITS = ${benefit_columns}


def main():
    frame = pd.read_csv(CSV)
    frame = frame[frame["status"] == "ok"]

    fig, (benefit_ax, budget_ax, poa_ax) = plt.subplots(3, 1, figsize=(7, 10), sharex=True)

    for column in BENEFITS:
        benefit_ax.plot(frame[X], frame[column], label=column.replace("benefit_", ""))
    benefit_ax.axhline(0.0, color="grey", linewidth=0.8)
    benefit_ax.set_ylabel("Participation benefit", fontsize=12)
    benefit_ax.legend()
    benefit_ax.grid()

    budget_ax.plot(frame[X], frame["pivotal_budget"], color="tab:red")
    budget_ax.axhline(0.0, color="grey", linewidth=0.8)
    budget_ax.set_ylabel("Pivotal budget", fontsize=12)
    budget_ax.grid()

    poa_ax.plot(frame[X], frame["price_of_anarchy"], color="tab:green")
    poa_ax.set_ylabel("Price of anarchy", fontsize=12)
    poa_ax.set_xlabel(X, fontsize=12)
    poa_ax.grid()

    fig.suptitle("${title}")
    fig.tight_layout()
    fig.savefig(HERE / "${png_name}", dpi=300)


if __name__ == "__main__":
    main()
''')


def _validate_schema(columns: List[str]) -> List[str]:
    """Benefit columns of a sweep CSV header; raises on anything else."""
    if not columns:
        raise InvalidInputError("sweep CSV has no header")
    required = [*FIXED_COLUMNS, *TRAILING_COLUMNS]
    missing = [c for c in required if c not in columns]
    if missing:
        raise InvalidInputError(f"sweep CSV is missing columns: {', '.join(missing)}")
    benefits = [c for c in columns if c.startswith("benefit_")]
    if not benefits:
        raise InvalidInputError("sweep CSV has no benefit_<block> column")
    if columns[0] in required or columns[0] in benefits:
        raise InvalidInputError("first sweep CSV column must be the swept parameter")
    return benefits


def emit_plot_script(csv_path: Path, preset: Optional[str] = None,
                     script_path: Optional[Path] = None) -> Path:
    """
    Write the plot script for a sweep CSV.

    Args:
        csv_path: CSV produced by run_sweep
        preset: Preset name used for the title
        script_path: Destination; `<csv stem>_plot.py` next to the CSV by default

    Returns:
        Path of the written script

    Raises:
        InvalidInputError: If the CSV cannot be read or its columns do not match a sweep
    """
    csv_path = Path(csv_path)
    try:
        columns = list(pd.read_csv(csv_path, nrows=0).columns)
    except (OSError, pd.errors.EmptyDataError, pd.errors.ParserError) as e:
        raise InvalidInputError(f"cannot read sweep CSV {csv_path}: {e}") from e
    benefits = _validate_schema(columns)

    if preset is not None and preset not in PRESETS:
        raise InvalidInputError(f"unknown preset '{preset}'")
    script_path = Path(script_path) if script_path else csv_path.with_name(f"{csv_path.stem}_plot.py")
    script_path.write_text(_SCRIPT.substitute(
        title=preset or csv_path.stem,
        csv_name=csv_path.name,
        png_name=f"{csv_path.stem}.png",
        x_column=columns[0],
        benefit_columns=repr(benefits),
    ))
    logger.info('SWEEP', f'Wrote plot script {script_path}')
    return script_path
