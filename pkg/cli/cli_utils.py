import dataclasses
import math
import os
import sys
from enum import Enum
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import BaseModel


class Color:
    RESET = "\033[0m"
    BOLD = "\033[1m"
    RED = "\033[31m"
    GREEN = "\033[32m"
    YELLOW = "\033[33m"
    BLUE = "\033[34m"
    MAGENTA = "\033[35m"
    CYAN = "\033[36m"
    BRIGHT_BLACK = "\033[90m"
    BRIGHT_MAGENTA = "\033[95m"
    BRIGHT_CYAN = "\033[96m"


class Cursor:
    ERASE_DISPLAY = "\033[2J"


def _colors_enabled(stream) -> bool:
    return not os.getenv("NO_COLOR") and hasattr(stream, "isatty") and stream.isatty()


def _print_formatted_message(
    message: str,
    prefix: str = "",
    color: str = "",
    style: str = "",
    stream=None,
    end: str = "\n"
):
    """
    Prints a formatted message to the specified stream (stdout by default).
    """
    stream = stream or sys.stdout
    if _colors_enabled(stream):
        message = f"{style}{color}{prefix}{message}{Color.RESET}"
    else:
        message = f"{prefix}{message}"
    stream.write(f"{message}{end}")
    stream.flush()


def to_payload(value: Any) -> Any:
    """
    Convert a command result into JSON-compatible data.

    Handles pydantic models, objects exposing to_dict(), dataclasses,
    enums, paths, numpy values and non-finite floats (mapped to None).
    """
    if isinstance(value, BaseModel):
        return to_payload(value.model_dump(mode="python"))
    if hasattr(value, "to_dict"):
        return to_payload(value.to_dict())
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return to_payload({f.name: getattr(value, f.name) for f in dataclasses.fields(value)})
    if isinstance(value, dict):
        return {str(k): to_payload(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_payload(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_payload(value.tolist())
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, np.generic):
        return to_payload(value.item())
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def _format_scalar(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.9g}"
    return str(value)


def format_payload(payload: Any, indent: int = 0) -> str:
    """Indented key: value rendering of a payload for the terminal."""
    pad = "  " * indent
    if isinstance(payload, dict):
        lines = []
        for key, value in payload.items():
            if isinstance(value, (dict, list)) and value and not _is_flat_list(value):
                lines.append(f"{pad}{key}:")
                lines.append(format_payload(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {format_payload(value)}")
        return "\n".join(lines)
    if isinstance(payload, list):
        if _is_flat_list(payload):
            return "[" + ", ".join(_format_scalar(v) for v in payload) + "]"
        return "\n".join(f"{pad}- " + format_payload(item, indent + 1).lstrip() for item in payload)
    return _format_scalar(payload)


def _is_flat_list(value: Any) -> bool:
    return isinstance(value, list) and all(not isinstance(v, (dict, list)) for v in value)
