import os
import sys
from pathlib import Path

# Before any project import: the logger is configured when core.logger loads.
os.environ.setdefault("LOG_FILE", "false")
os.environ.setdefault("LOG_LEVEL", "warning")
os.environ.setdefault("NO_COLOR", "1")

ROOT = Path(__file__).resolve().parent.parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

import numpy as np
import pytest

from core.config import LabConfig
from core.domain.game_model import Dominant, SelfDependence, Star, TwoClass, WeakestLink


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def lab_config():
    """Configuration with defaults only, ignoring config.json and the environment."""
    return LabConfig(config_path="")


@pytest.fixture
def selfdep():
    return SelfDependence(10, 6, 1)


@pytest.fixture
def dominant():
    return Dominant(5, 10, 0.45)


@pytest.fixture
def two_class():
    return TwoClass(4, 0.1, 8, 2, 0.05)


@pytest.fixture
def weakest_link():
    return WeakestLink(4, 1, 1)


@pytest.fixture
def star():
    return Star(10, 1)
