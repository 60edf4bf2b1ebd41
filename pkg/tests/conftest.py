import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


GAUSS7 = (1.0, 0.0, 1.0, 0.0, 3.0, 0.0, 15.0)
