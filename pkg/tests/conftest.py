import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20221015)


def random_pairs(rng, n, count, positive=False):
    """``count`` pairs of random probability vectors of length n."""
    mu = rng.uniform(1e-3 if positive else 0.0, 1.0, (count, n))
    nu = rng.uniform(1e-3 if positive else 0.0, 1.0, (count, n))
    return mu / mu.sum(1, keepdims=True), nu / nu.sum(1, keepdims=True)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for line in results:
            terminalreporter.write_line(line)
