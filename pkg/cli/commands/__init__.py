"""
CLI Commands Module

Contains all laboratory command implementations.
"""

from typing import Dict

from .base_command import BaseCommand


def get_all_commands() -> Dict[str, BaseCommand]:
    """
    Get all available commands.

    Returns:
        Dictionary mapping command names to command instances
    """
    from .classify_command import ClassifyCommand
    from .impossibility_command import ImpossibilityCommand
    from .mechanism_command import MechanismCommand
    from .solve_command import SolveCommand
    from .sweep_command import SweepCommand

    commands = [SolveCommand(), MechanismCommand(), ClassifyCommand(),
                ImpossibilityCommand(), SweepCommand()]
    return {command.name: command for command in commands}


__all__ = ["BaseCommand", "get_all_commands"]
