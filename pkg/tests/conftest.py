import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def pauli_x():
    return np.array([[0.0, 1.0], [1.0, 0.0]])
