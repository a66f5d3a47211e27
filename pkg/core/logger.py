"""
Laboratory Logger

Process-wide structured logger with console and file output.
Levels, destinations and rotation are configured from the environment.
"""
import inspect
import json
import logging
import os
import sys
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np

# Custom levels for numerical events and sweep progress
SOLVER_LEVEL = 25
SWEEP_LEVEL = 26
logging.addLevelName(SOLVER_LEVEL, "SOLVER")
logging.addLevelName(SWEEP_LEVEL, "SWEEP")


def _get_main_script_directory() -> Path:
    """Directory of the script that launched the process, used as the log root."""
    try:
        main_script_path = inspect.stack()[-1].filename
        return Path(main_script_path).parent.resolve()
    except (IndexError, AttributeError):
        return Path.cwd()


def _parse_flag(value: Optional[str], default: bool) -> bool:
    if not value:
        return default
    return value.lower() in ('true', '1', 'yes', 'on')


class LogConfig:
    """Logger configuration read from environment variables."""

    def __init__(self, env: Optional[Dict[str, str]] = None):
        if env is None:
            env = os.environ

        self.log_level = env.get('LOG_LEVEL', 'info').upper()
        self.log_console = _parse_flag(env.get('LOG_CONSOLE'), True)
        self.log_file = _parse_flag(env.get('LOG_FILE'), True)
        self.log_solver = _parse_flag(env.get('LOG_SOLVER'), True)
        self.log_sweep = _parse_flag(env.get('LOG_SWEEP'), True)
        self.log_dir = env.get('LOG_DIR', str(_get_main_script_directory() / 'Logs'))
        self.max_log_files = int(env.get('LOG_MAX_FILES', '5'))
        self.no_color = _parse_flag(env.get('NO_COLOR'), False)


class ColoredFormatter(logging.Formatter):
    """Formatter that colours the level name on a terminal."""

    COLORS = {
        'DEBUG': '\x1b[34m',
        'INFO': '\x1b[36m',
        'SOLVER': '\x1b[35m',
        'SWEEP': '\x1b[32m',
        'WARNING': '\x1b[33m',
        'ERROR': '\x1b[31m',
        'CRITICAL': '\x1b[31;1m',
        'RESET': '\x1b[0m',
    }

    def __init__(self, use_colors: bool = True, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.use_colors = use_colors and sys.stdout.isatty()

    def formatTime(self, record, datefmt=None):
        stamp = datetime.fromtimestamp(record.created).strftime(datefmt or "%H:%M:%S")
        return f"{stamp}.{int(record.msecs):03d}"

    def format(self, record: logging.LogRecord) -> str:
        if not self.use_colors or getattr(record, 'no_color', False):
            return super().format(record)

        levelname = record.levelname
        color = self.COLORS.get(levelname, self.COLORS['RESET'])
        try:
            record.levelname = f"{color}{levelname}{self.COLORS['RESET']}"
            return super().format(record)
        finally:
            record.levelname = levelname


def _to_jsonable(value: Any) -> Any:
    """Converts numpy containers and scalars into plain Python values."""
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, dict):
        return {str(k): _to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_to_jsonable(v) for v in value]
    return value


class Logger:
    """
    Structured, leveled logger.

    Methods accept (debug_id, message, data=None):
        - debug_id: short tag of the log source (e.g. 'SOLVER', 'SWEEP').
        - message: the log line.
        - data: optional structured payload, pretty-printed as JSON.
    """
    _instance = None

    def __new__(cls, *args, **kwargs):
        if cls._instance is None:
            cls._instance = super(Logger, cls).__new__(cls)
            cls._instance._initialized = False
        return cls._instance

    def __init__(self, name: str = 'seclab', config: Optional[LogConfig] = None):
        if self._initialized and not config:
            return
        self._initialized = True

        self.config = config or LogConfig()
        self.logger = logging.getLogger(name)
        self.logger.setLevel(self.config.log_level)
        self.logger.propagate = False
        self.log_file_path: Optional[str] = None
        self.logger.handlers.clear()

        if self.config.log_console:
            self._add_console_handler()
        if self.config.log_file:
            self._add_file_handler()

        self.debug('LOGGER', 'Logger initialized', {
            'level': self.config.log_level,
            'file_logging': self.config.log_file,
            'log_dir': self.config.log_dir,
        })

    def _add_console_handler(self):
        handler = logging.StreamHandler(sys.stderr)
        handler.setLevel(self.config.log_level)
        handler.setFormatter(ColoredFormatter(
            fmt='[%(asctime)s] [%(levelname)s] %(message)s',
            datefmt='%H:%M:%S',
        ))
        self.logger.addHandler(handler)

    def _add_file_handler(self):
        try:
            log_dir = Path(self.config.log_dir)
            log_dir.mkdir(parents=True, exist_ok=True)

            timestamp = datetime.now().strftime('%Y-%m-%d_%H-%M-%S')
            log_file = log_dir / f'log-{timestamp}-{os.getpid()}.log'
            self.log_file_path = str(log_file)

            handler = logging.FileHandler(log_file, mode='w', encoding='utf-8')
            handler.setLevel(self.config.log_level)
            handler.setFormatter(ColoredFormatter(
                use_colors=False,
                fmt='[%(asctime)s] [%(levelname)s] %(message)s',
                datefmt='%Y-%m-%d %H:%M:%S',
            ))
            self.logger.addHandler(handler)
            self._rotate_logs(log_dir)
        except OSError as e:
            print(f"[LOGGER] Failed to setup file handler: {e}", file=sys.stderr)

    def _rotate_logs(self, log_dir: Path):
        """Keeps only the newest max_log_files log files."""
        try:
            log_files = sorted(log_dir.glob('log-*.log'), key=os.path.getmtime)
            excess = len(log_files) - self.config.max_log_files
            for stale in log_files[:max(0, excess)]:
                os.remove(stale)
        except OSError as e:
            self.logger.error(f"[LOGGER] Failed to rotate logs: {e}")

    def _format_message(self, debug_id: str, message: str, data: Optional[Any] = None) -> str:
        formatted = f"[{debug_id}] {message}"
        if data is None or (isinstance(data, dict) and not data):
            return formatted
        if isinstance(data, str):
            return formatted + "\n  " + data.replace('\n', '\n  ')
        try:
            payload = json.dumps(_to_jsonable(data), indent=2, default=str)
        except (TypeError, ValueError):
            payload = "[Could not serialize data]"
        return formatted + "\n  " + payload.replace('\n', '\n  ')

    def _log(self, level: int, debug_id: str, message: str, data: Optional[Any] = None):
        if not self.logger.isEnabledFor(level):
            return
        self.logger.log(level, self._format_message(debug_id, message, data),
                        extra={'no_color': self.config.no_color})

    def debug(self, debug_id: str, message: str, data: Optional[Any] = None):
        self._log(logging.DEBUG, debug_id, message, data)

    def info(self, debug_id: str, message: str, data: Optional[Any] = None):
        self._log(logging.INFO, debug_id, message, data)

    def solver(self, debug_id: str, message: str, data: Optional[Any] = None):
        """Log at SOLVER level if enabled."""
        if self.config.log_solver:
            self._log(SOLVER_LEVEL, debug_id, message, data)

    def sweep(self, debug_id: str, message: str, data: Optional[Any] = None):
        """Log at SWEEP level if enabled."""
        if self.config.log_sweep:
            self._log(SWEEP_LEVEL, debug_id, message, data)

    def warning(self, debug_id: str, message: str, data: Optional[Any] = None):
        self._log(logging.WARNING, debug_id, message, data)

    def error(self, debug_id: str, message: str, data: Optional[Any] = None):
        self._log(logging.ERROR, debug_id, message, data)

    def critical(self, debug_id: str, message: str, data: Optional[Any] = None):
        self._log(logging.CRITICAL, debug_id, message, data)

    warn = warning

    def get_log_path(self) -> Optional[str]:
        return self.log_file_path


logger = Logger()


def log(level: str, debug_id: str, message: str, data: Optional[Any] = None):
    method = getattr(logger, level.lower(), logger.info)
    method(debug_id, message, data)


def reconfigure_logger(config: Optional[LogConfig] = None) -> Logger:
    """Re-configures the singleton; used by tests."""
    global logger
    logger = Logger(config=config or LogConfig())
    return logger
