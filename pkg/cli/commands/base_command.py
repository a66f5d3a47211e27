"""
Base Command Class

Provides foundation for all CLI commands: argument parsing, flat JSON config
files merged under the flags, result printing and exit codes.
"""

import argparse
import json
import sys
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, List, Optional

from cli.cli_utils import Color, _print_formatted_message, format_payload, to_payload
from core.errors import InvalidInputError, LabError
from core.logger import logger
from core.services.model_factory import build_model

EXIT_OK = 0
EXIT_INVALID_INPUT = InvalidInputError.exit_code

MODEL_ARGUMENTS = ("family", "a", "n", "c", "a1", "a2", "n1", "n2", "rho", "risk", "matrix")


class LabArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that raises InvalidInputError instead of exiting."""

    def error(self, message: str):
        raise InvalidInputError(f"{self.prog}: {message}")

    def exit(self, status: int = 0, message: Optional[str] = None):
        if message:
            _print_formatted_message(message.rstrip())
        raise _HelpShown(status)


class _HelpShown(Exception):
    def __init__(self, status: int):
        super().__init__(status)
        self.status = status


def add_model_arguments(parser: argparse.ArgumentParser, family_required: bool = False):
    """Flags describing a game model; all default to None so config files can fill them."""
    group = parser.add_argument_group("model")
    group.add_argument("--family", required=family_required,
                       help="selfdep, twoclass, dominant, star, weakestlink or wte")
    for name in ("a", "c", "a1", "a2", "rho"):
        group.add_argument(f"--{name}", type=float)
    for name in ("n", "n1", "n2"):
        group.add_argument(f"--{name}", type=float)
    group.add_argument("--risk", choices=["exp", "reciprocal"])
    group.add_argument("--matrix", help="JSON file with 'influence' and 'unit_costs' (wte)")


def load_config_file(path: Optional[str]) -> Dict[str, Any]:
    """Flat JSON key/value document, or {} when no path is given."""
    if not path:
        return {}
    try:
        values = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise InvalidInputError(f"cannot read config file {path}: {e}") from e
    if not isinstance(values, dict):
        raise InvalidInputError(f"config file {path} must hold a JSON object")
    return values


class BaseCommand(ABC):
    """
    Abstract base class for CLI commands.

    Subclasses declare their flags in `configure` and compute a result in
    `handle`; the result is printed as JSON with --json, as text otherwise.
    """

    @property
    @abstractmethod
    def name(self) -> str:
        pass

    @property
    @abstractmethod
    def description(self) -> str:
        """
        Command description shown in help.

        Returns:
            Description string
        """
        pass

    @abstractmethod
    def configure(self, parser: argparse.ArgumentParser):
        pass

    @abstractmethod
    def handle(self, options: Dict[str, Any]) -> Any:
        """
        Run the command.

        Args:
            options: Config file values overridden by the given flags

        Returns:
            Pydantic model, dataclass with to_dict, or plain JSON-able data
        """
        pass

    def build_parser(self) -> LabArgumentParser:
        parser = LabArgumentParser(prog=self.name, description=self.description)
        parser.add_argument("--config", help="flat JSON file; flags override its values")
        parser.add_argument("--json", action="store_true", help="print the result as JSON")
        self.configure(parser)
        return parser

    def parse(self, args: List[str]) -> Dict[str, Any]:
        """Parsed flags merged over the config file."""
        namespace = vars(self.build_parser().parse_args(args))
        options = load_config_file(namespace.pop("config"))
        options.update({k: v for k, v in namespace.items() if v is not None})
        return options

    def run(self, args: List[str]) -> int:
        """
        Parse, execute and print; returns the process exit code.
        """
        try:
            options = self.parse(args)
            as_json = bool(options.pop("json", False))
            result = self.handle(options)
        except _HelpShown as shown:
            return shown.status
        except LabError as e:
            logger.debug('CLI', f'/{self.name} failed', {'error': str(e), 'type': type(e).__name__})
            _print_formatted_message(f"Error: {e}", color=Color.RED, stream=sys.stderr)
            return e.exit_code

        payload = to_payload(result)
        if as_json:
            print(json.dumps(payload, indent=2, sort_keys=False))
        else:
            print(format_payload(payload))
        return EXIT_OK

    def execute(self, args: List[str]) -> bool:
        """
        Execute command from the interactive terminal.

        Returns:
            True to continue terminal loop
        """
        self.run(args)
        return True


def model_from_options(options: Dict[str, Any]):
    """Build the game model described by the merged options."""
    if not options.get("family"):
        raise InvalidInputError("missing --family")
    params = {k: options[k] for k in MODEL_ARGUMENTS if k != "family" and k in options}
    extra = {k: options[k] for k in ("influence", "unit_costs") if k in options}
    return build_model(options["family"], {**params, **extra})
