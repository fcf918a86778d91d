from pathlib import Path

import pytest
from dotenv import load_dotenv

from hormander_lab.src.analysis.field_core import make_grid
from hormander_lab.src.utils.random_fields import named_rng


project_root = Path(__file__).parent.parent.parent
load_dotenv(project_root / ".env")


@pytest.fixture
def line():
    """1-dim grid on [-16, 16) with 256 points."""
    return make_grid(1, 16.0, 256)


@pytest.fixture
def rng():
    return named_rng(7, "tests")
