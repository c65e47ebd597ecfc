import numpy as np
import pytest


ENTRY_POOL = np.array([0.0, 1.0, 2.0, 3.0, np.inf])


def random_dissimilarity(rng, max_side=7):
    """Small random extended-value matrix for oracle comparisons."""
    nl = int(rng.integers(2, max_side + 1))
    nw = int(rng.integers(2, max_side + 1))
    return rng.choice(ENTRY_POOL, size=(nl, nw), p=[0.15, 0.3, 0.25, 0.2, 0.1])


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
