import numpy as np
import pytest

from doqr import Dataset

NORMAL_20K_SEED = 99


@pytest.fixture(scope="session")
def normal20k() -> Dataset:
    """Seeded 20000-point standard bivariate normal sample, shared across
    tests so the per-dataset depth caches are paid for once."""
    rng = np.random.default_rng(NORMAL_20K_SEED)
    return Dataset(rng.standard_normal((20000, 2)))
