import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pialg import load_defaults


@pytest.fixture(scope="session")
def tables():
    return load_defaults()
