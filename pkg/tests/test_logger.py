import importlib
import os

import numpy as np
import pytest

# core/__init__ re-exports the `logger` instance, shadowing the submodule attribute.
logger_module = importlib.import_module("core.logger")
from core.logger import LogConfig, log, reconfigure_logger


@pytest.fixture
def file_logger(tmp_path):
    def configure(**env):
        values = {"LOG_LEVEL": "debug", "LOG_CONSOLE": "false", "LOG_FILE": "true",
                  "LOG_DIR": str(tmp_path), **env}
        return reconfigure_logger(LogConfig(values))

    yield configure
    reconfigure_logger(LogConfig())


def _read(instance):
    with open(instance.get_log_path(), encoding="utf-8") as f:
        return f.read()


class TestLogConfig:
    def test_defaults(self, tmp_path):
        config = LogConfig({"LOG_DIR": str(tmp_path)})
        assert config.log_level == "INFO"
        assert config.log_console and config.log_file and config.log_solver
        assert config.max_log_files == 5

    def test_flags(self):
        config = LogConfig({"LOG_SWEEP": "off", "LOG_FILE": "0", "NO_COLOR": "yes", "LOG_LEVEL": "warning"})
        assert not config.log_sweep and not config.log_file and config.no_color
        assert config.log_level == "WARNING"


class TestLogger:
    def test_payloads_are_pretty_printed(self, file_logger):
        instance = file_logger()
        instance.solver("NASH", "support enumeration", {"levels": np.array([0.5, 1.0]), "n": np.int64(3)})
        text = _read(instance)
        assert "[SOLVER] [NASH] support enumeration" in text
        assert '"n": 3' in text and "0.5" in text

    def test_muted_levels(self, file_logger):
        instance = file_logger(LOG_SWEEP="false")
        instance.sweep("SWEEP", "point 1 of 3")
        instance.info("SWEEP", "done")
        text = _read(instance)
        assert "point 1 of 3" not in text
        assert "done" in text

    def test_level_filter(self, file_logger):
        instance = file_logger(LOG_LEVEL="warning")
        instance.debug("CONFIG", "hidden")
        log("error", "CONFIG", "shown")
        text = _read(instance)
        assert "hidden" not in text and "[ERROR] [CONFIG] shown" in text

    def test_rotation_keeps_newest_files(self, tmp_path, file_logger):
        for k in range(3):
            stale = tmp_path / f"log-old{k}.log"
            stale.write_text("old")
            os.utime(stale, (1_000_000 + k, 1_000_000 + k))
        file_logger(LOG_MAX_FILES="2")
        assert sorted(p.name for p in tmp_path.glob("log-old*.log")) == ["log-old2.log"]
        assert len(list(tmp_path.glob("log-*.log"))) == 2

    def test_reconfigure_updates_shared_instance(self, file_logger):
        instance = file_logger()
        assert logger_module.logger is instance
