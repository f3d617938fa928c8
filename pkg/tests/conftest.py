import os
from pathlib import Path

import numpy as np
import pytest
from tornadotab.backend import backends
from tornadotab.core.hashing import HashParams

RUN_TESTS = ["numpy", "numba"]
BACKENDS = [b for b in backends.available_backends if b in RUN_TESTS]

DATA_DIR = Path(__file__).parent / "data"

if os.getenv("TT_TEST_OUTPUT", "False").lower() in ("true", "1", "t"):
    OUT_DIR = Path(__file__).parent / "output"
    OUT_DIR.mkdir(exist_ok=True)
else:
    OUT_DIR = None

RUN_SLOW = os.getenv("TT_RUN_SLOW", "False").lower() in ("true", "1", "t")
slow = pytest.mark.skipif(not RUN_SLOW, reason="set TT_RUN_SLOW=1 for full-scale runs")

for backend in RUN_TESTS:
    if backend in backends.available_backends:
        backends.register_backend(backend)


@pytest.fixture()
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture()
def small_params():
    return HashParams(c=2, d=3, char_bits=4, range_bits=16)


@pytest.fixture()
def profile_params():
    """The 64-bit key profile: four 16-bit characters and three derived ones."""
    return HashParams(c=4, d=3, char_bits=16, range_bits=64)
