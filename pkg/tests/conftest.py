import numpy as np
import pytest


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow end-to-end tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def numeric_gradients():
    """Central finite differences of model.objective over every trainable array"""

    def compute(model, X, reg, step=1e-6):
        grads = {}
        for name, array in model.arrays().items():
            grad = np.zeros_like(array)
            for index in np.ndindex(array.shape):
                original = array[index]
                array[index] = original + step
                plus, _ = model.objective(X, reg)
                array[index] = original - step
                minus, _ = model.objective(X, reg)
                array[index] = original
                grad[index] = (plus - minus) / (2.0 * step)
            grads[name] = grad
        return grads

    return compute


@pytest.fixture
def figure_dag():
    """Five-node DAG 1->0, 2->0, 3->2, 3->4, 4->1, 4->2"""
    A = np.zeros((5, 5), dtype=bool)
    for u, v in [(1, 0), (2, 0), (3, 2), (3, 4), (4, 1), (4, 2)]:
        A[u, v] = True
    return A
