import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from signedkn import SymMatrix, eigen_decompose, enumerate_tree_classes

settings.register_profile(
    "suite",
    max_examples=60,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session", autouse=True)
def warm_solver():
    """Trigger jit compilation once so no timed test pays for it."""
    eigen_decompose(SymMatrix(2, np.zeros((2, 2))))


@pytest.fixture(scope="session")
def classes_of():
    """Memoized isomorphism-class enumeration shared across test modules."""
    cache: dict[int, tuple] = {}

    def get(n: int):
        if n not in cache:
            cache[n] = enumerate_tree_classes(n)
        return cache[n]

    return get
