"""
CLI package: one-shot commands and the interactive terminal.
"""

from cli.cli_utils import (
    Color,
    Cursor,
    _print_formatted_message
)
from cli.command_manager import CommandManager

__all__ = [
    "CommandManager",
    "Color",
    "Cursor",
    "_print_formatted_message"
]
