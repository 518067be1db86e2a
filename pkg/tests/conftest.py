from pathlib import Path

import pytest

from ncwalk import parse_tudataset

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture(scope="session")
def mutag():
    return parse_tudataset(DATA_DIR / "MUTAG", "MUTAG")
