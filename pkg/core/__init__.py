"""
Core package: logging, configuration, errors, domain value objects and cost evaluation.
"""

from .logger import logger, log

__all__ = [
    "logger",
    "log",
]
