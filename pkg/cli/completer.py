"""
CLI Completer

Handles context-aware tab completion for the CLI.
- Command completion (starting with /)
- Flag completion for the command being typed
- Path completion (config files, CSV outputs)
"""

import glob
import os
import shlex
from typing import Callable, Dict, List


class CLICompleter:
    """
    Handles completion logic.
    """

    def __init__(self, command_provider: Callable[[], Dict],
                 option_provider: Callable[[str], List[str]]):
        """
        Initialize completer.

        Args:
            command_provider: Function that returns dictionary of available commands.
            option_provider: Function returning the flags of a command name.
        """
        self._command_provider = command_provider
        self._option_provider = option_provider

    def get_matches(self, document_text: str, word_before_cursor: str) -> List[str]:
        """
        Dispatch logic to determine which completion strategy to use.

        Args:
            document_text: The full text of the line buffer.
            word_before_cursor: The specific word being completed.
        """
        try:
            parts = shlex.split(document_text)
        except ValueError:
            parts = document_text.split()

        stripped = document_text.lstrip()
        if not stripped.startswith("/"):
            return []
        if len(parts) <= 1 and not document_text.endswith(" "):
            return self._get_command_matches(word_before_cursor)

        command = parts[0][1:].lower()
        if word_before_cursor.startswith("-"):
            return [o for o in self._option_provider(command) if o.startswith(word_before_cursor)]
        return self._get_path_matches(word_before_cursor)

    def _get_command_matches(self, text: str) -> List[str]:
        commands = list(self._command_provider().keys())
        prefix = text[1:] if text.startswith("/") else text
        return sorted(f"/{cmd}" for cmd in commands if cmd.startswith(prefix))

    def _get_path_matches(self, text: str) -> List[str]:
        expanded_text = os.path.expanduser(text)
        results = []
        for match in glob.glob(f"{expanded_text}*"):
            if os.path.isdir(match):
                match += os.sep
            results.append(match)
        return sorted(results)
