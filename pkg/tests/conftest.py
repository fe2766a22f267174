import numpy as np
import pytest

from ttolab.blaschke import FiniteBlaschkeProduct

# Frozen fixture zeros (|z| <= 0.7); the degree-3 and degree-5 sets were drawn
# once from a seeded generator and written out so tests never depend on RNG streams.
RANDOM3_A = ([0.3 + 0.2j, -0.5j, 0.6], 1j)
RANDOM3_B = ([-0.41 + 0.33j, 0.17 - 0.58j, 0.62 + 0.09j], np.exp(0.4j))
DEGREE5 = ([0.1 + 0.2j, -0.6 + 0.1j, 0.45 - 0.4j, -0.2 - 0.65j, 0.45 + 0.45j], np.exp(-1.1j))
DEGREE4 = ([0.52 - 0.21j, -0.33 + 0.47j, 0.08 + 0.61j, -0.55 - 0.3j], np.exp(2.3j))


def make(pair):
    zeros, gamma = pair
    return FiniteBlaschkeProduct.from_zeros(zeros, gamma)


FIXTURES = {
    "z2": FiniteBlaschkeProduct.monomial(2),
    "z3": FiniteBlaschkeProduct.monomial(3),
    "random3a": make(RANDOM3_A),
    "random3b": make(RANDOM3_B),
    "degree5": make(DEGREE5),
}


@pytest.fixture(params=sorted(FIXTURES))
def theta(request):
    return FIXTURES[request.param]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_disk(rng, radius=0.8, size=None):
    r = radius * np.sqrt(rng.uniform(size=size))
    return r * np.exp(2j * np.pi * rng.uniform(size=size))


def random_vector(rng, n):
    return rng.normal(size=n) + 1j * rng.normal(size=n)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
