"""
Command Manager

Handles command registration, execution, and management for the CLI.
"""

import shlex
import sys
from typing import Callable, Dict, List, Optional, Tuple

from core.logger import logger
from cli.cli_utils import Color, Cursor
from cli.commands import get_all_commands
from cli.commands.base_command import EXIT_INVALID_INPUT


class CommandManager:
    """
    Manages CLI commands including registration and execution.

    Handles both built-in terminal commands (help, exit, clear) and the
    laboratory commands loaded from the commands module. The same commands
    run one-shot from the process arguments through `run_once`.
    """

    def __init__(self, terminal=None):
        """
        Initialize command manager.

        Args:
            terminal: Terminal instance for output operations.
        """
        self._commands: Dict[str, Dict] = {}
        self._terminal = terminal
        self._running = True

        self._setup_built_in_commands()
        self._load_lab_commands()

    def _setup_built_in_commands(self) -> None:
        """Setup built-in commands."""
        self._register_command("help", self._execute_help, "Show available commands")
        self._register_command("exit", self._execute_exit, "Exit the application")
        self._register_command("quit", self._execute_exit, "Exit the application")
        self._register_command("clear", self._execute_clear, "Clear the screen")

    def _load_lab_commands(self) -> None:
        """Load all commands from cli/commands module."""
        for name, command in get_all_commands().items():
            self._register_command(name, command.execute, command.description, command)

    def _register_command(self, name: str, handler: Callable, description: str = "",
                          command=None) -> None:
        """
        Register a command handler.

        Args:
            name: Command name (without /).
            handler: Function to call when command is entered.
            description: Help text for command.
            command: BaseCommand behind the handler, for one-shot runs.
        """
        self._commands[name] = {
            "handler": handler,
            "description": description,
            "command": command,
        }

    def register_command(self, name: str, handler: Callable, description: str = "") -> None:
        """Public method to register a command."""
        self._register_command(name, handler, description)

    def get_all_commands(self) -> Dict[str, Dict]:
        """
        Get all registered commands.

        Returns:
            Dictionary of command names to command data.
        """
        return self._commands.copy()

    def has_command(self, name: str) -> bool:
        return name in self._commands

    def option_names(self, name: str) -> List[str]:
        """Long flags of a laboratory command, for completion."""
        command = self._commands.get(name, {}).get("command")
        if command is None:
            return []
        parser = command.build_parser()
        return sorted(opt for action in parser._actions for opt in action.option_strings
                      if opt.startswith("--"))

    def parse_command(self, user_input: str) -> Optional[Tuple[str, list]]:
        """
        Parse command from user input.

        Args:
            user_input: Raw user input string.

        Returns:
            Tuple of (command_name, args) or None if not a command.
        """
        if not user_input.startswith("/"):
            return None

        try:
            parts = shlex.split(user_input[1:])
        except ValueError as e:
            if self._terminal:
                self._terminal.print_message(f"Error parsing command: {e}", color=Color.RED)
            return None

        if not parts:
            return None

        return parts[0].lower(), parts[1:]

    def execute_command(self, cmd_name: str, args: list) -> bool:
        """
        Execute a registered command.

        Args:
            cmd_name: Name of the command to execute.
            args: Arguments to pass to the command.

        Returns:
            True to continue running, False to stop.
        """
        if not self.has_command(cmd_name):
            self._handle_unknown_command(cmd_name)
            return True

        continue_running = self._commands[cmd_name]["handler"](args)

        if not continue_running:
            self._running = False

        return continue_running

    def run_once(self, argv: List[str]) -> int:
        """
        Run `<command> [flags]` from the process arguments.

        Returns:
            Process exit code
        """
        if not argv:
            return EXIT_INVALID_INPUT
        name, args = argv[0].lstrip("/").lower(), argv[1:]
        command = self._commands.get(name, {}).get("command")
        if command is None:
            known = ", ".join(n for n, c in sorted(self._commands.items()) if c["command"])
            sys.stderr.write(f"Unknown command: {name} (known: {known})\n")
            return EXIT_INVALID_INPUT
        logger.debug('CLI', f'Running {name}', {'args': args})
        return command.run(args)

    def _handle_unknown_command(self, cmd_name: str) -> None:
        if self._terminal:
            self._terminal.print_message(
                f"Unknown command: /{cmd_name}",
                color=Color.RED,
                style=Color.BOLD
            )
            self._terminal.print_message("Type /help for available commands", color=Color.YELLOW)

    def is_running(self) -> bool:
        return self._running

    def stop(self) -> None:
        """Stop the command manager."""
        self._running = False

    def _execute_help(self, args: list) -> bool:
        """
        Execute help command.

        `/help <command>` prints that command's flags.
        """
        if not self._terminal:
            return True

        if args and self._commands.get(args[0], {}).get("command"):
            self._terminal.print_message(self._commands[args[0]]["command"].build_parser().format_help())
            return True

        self._terminal.print_message("\nAvailable commands:", style=Color.BOLD)
        self._terminal.print_message("-" * 60)
        for name, cmd in sorted(self._commands.items()):
            desc = cmd["description"] or "No description"
            self._terminal.print_message(f"  /{name:<15} {desc}")
        self._terminal.print_message("-" * 60)
        self._terminal.print_message("")
        return True

    def _execute_exit(self, args: list) -> bool:
        if self._terminal:
            self._terminal.print_message("\nExiting...", color=Color.YELLOW)
        return False

    def _execute_clear(self, args: list) -> bool:
        sys.stdout.write(Cursor.ERASE_DISPLAY)
        sys.stdout.flush()
        return True
