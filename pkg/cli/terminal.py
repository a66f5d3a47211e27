"""
Interactive terminal for the laboratory

Provides the command-line interface with input loop and display functionality.
"""

import os
import sys
from typing import Callable, Iterable, Optional

from prompt_toolkit import PromptSession
from prompt_toolkit.completion import Completer, Completion
from prompt_toolkit.document import Document
from prompt_toolkit.formatted_text import ANSI
from prompt_toolkit.history import FileHistory
from prompt_toolkit.key_binding import KeyBindings

from core.logger import logger
from cli.cli_utils import Color, _print_formatted_message
from cli.command_manager import CommandManager
from cli.completer import CLICompleter


class LabCompleter(Completer):
    """
    Adapter to connect CLICompleter with prompt_toolkit.
    """
    def __init__(self, cli_completer: CLICompleter):
        self._cli_completer = cli_completer

    def get_completions(self, document: Document, complete_event) -> Iterable[Completion]:
        word_before_cursor = document.get_word_before_cursor(WORD=True)
        for match in self._cli_completer.get_matches(document.text, word_before_cursor):
            yield Completion(match, start_position=-len(word_before_cursor))


class Terminal:
    """
    Interactive terminal for user input and output.

    Provides continuous input loop and delegates every `/command` to
    CommandManager.
    """

    PROMPT = f"{Color.BOLD}{Color.BRIGHT_CYAN}seclab{Color.RESET} > "

    def __init__(self, history_file: Optional[str] = None):
        """
        Initialize terminal.

        Args:
            history_file: Input history path (default: ~/.seclab_history)
        """
        self.running = False
        self._command_manager = CommandManager(terminal=self)

        self._bindings = KeyBindings()

        @self._bindings.add('c-c')
        def _(event):
            "Pressing Ctrl-C will exit the application if buffer is empty, else clear buffer."
            buff = event.current_buffer
            if buff.text:
                buff.reset()
            else:
                event.app.exit(exception=KeyboardInterrupt, style='class:aborting')

        histfile = history_file or os.path.join(os.path.expanduser("~"), ".seclab_history")
        self._completer = CLICompleter(
            self._command_manager.get_all_commands,
            self._command_manager.option_names,
        )
        self._session = PromptSession(
            history=FileHistory(histfile),
            completer=LabCompleter(self._completer),
            complete_while_typing=False,
            key_bindings=self._bindings,
        )

    def print_message(
        self,
        message: str,
        prefix: str = "",
        color: str = "",
        style: str = "",
        stream=None,
        end: str = "\n"
    ) -> None:
        """
        Print formatted message to the terminal.

        Args:
            message: Message text to display.
            prefix: Optional prefix string.
            color: Color code for the message.
            style: Style code for the message.
            stream: Output stream to write to.
            end: String appended after the message.
        """
        _print_formatted_message(message, prefix, color, style, stream, end)

    def _display_title(self) -> None:
        self.print_message("Security game mechanism lab", color=Color.CYAN, style=Color.BOLD)
        self.print_message("Type /help for available commands, /help <command> for its flags.",
                           color=Color.YELLOW)
        self.print_message("")

    def register_command(self, name: str, handler: Callable, description: str = "") -> None:
        self._command_manager.register_command(name, handler, description)

    def process_input(self, user_input: str) -> None:
        """
        Process one line of user input.

        Args:
            user_input: Raw input from user.
        """
        user_input = user_input.strip()
        if not user_input:
            return

        command_data = self._command_manager.parse_command(user_input)
        if command_data is None:
            self.print_message("Commands start with '/'. Type /help.", color=Color.YELLOW)
            return

        cmd_name, args = command_data
        try:
            continue_running = self._command_manager.execute_command(cmd_name, args)
        except KeyboardInterrupt:
            self.print_message("\nCommand interrupted.", color=Color.YELLOW)
            return
        except Exception as e:
            logger.error('CLI', f'Unexpected error in /{cmd_name}', {'error': str(e)})
            self.print_message(f"Error: {e}", color=Color.RED, style=Color.BOLD)
            return

        if not continue_running:
            self.running = False

    def read_input(self) -> Optional[str]:
        """
        Read line from standard input using prompt_toolkit.

        Returns:
            Input line or None on EOF/interrupt.
        """
        try:
            return self._session.prompt(ANSI(self.PROMPT))
        except EOFError:
            return None
        except KeyboardInterrupt:
            self.print_message("\nExiting...", color=Color.YELLOW)
            return None

    def run(self) -> None:
        """Start interactive input loop."""
        self.running = True
        self._display_title()
        while self.running:
            user_input = self.read_input()
            if user_input is None:
                break
            self.process_input(user_input)

    def stop(self) -> None:
        """Stop the interactive loop."""
        self.running = False
        self._command_manager.stop()
