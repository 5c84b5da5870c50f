import random

import pytest

from cubetoric import _backend


@pytest.fixture
def rng():
    return random.Random(20240817)


@pytest.fixture
def restore_backend():
    """Let a test switch kernels without leaking into the rest of the run."""
    active = _backend.kernels()
    yield
    _backend._active = active
