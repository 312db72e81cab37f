import numpy as np
import pytest
from hypothesis import strategies as st

from uncertainty_bounds.sampler import draw_instance

SQRT2 = np.sqrt(2.0)

# plain-numpy Pauli matrices, kept independent of the package constants
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
E0 = np.array([1, 0], dtype=complex)
E1 = np.array([0, 1], dtype=complex)
EQUATOR = np.array([1, np.exp(1j * np.pi / 4)]) / SQRT2


def equator(theta):
    return np.array([1, np.exp(1j * theta)]) / SQRT2


@pytest.fixture
def rng():
    return np.random.default_rng(20261018)


def random_hermitian(rng, d):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return 0.5 * (g + g.conj().T)


def random_state(rng, d):
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


# hypothesis draws (dim, seed, index) and the package's counter-based sampler
# builds the instance; shrinking then works on small integers
instances = st.builds(
    lambda d, seed, i: draw_instance(d, seed, i),
    st.sampled_from([2, 3, 4, 8]),
    st.integers(0, 2**32),
    st.integers(0, 1000),
)


def pytest_terminal_summary(terminalreporter):
    # one line per acceptance criterion, shown even when output is captured
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for name in sorted(RESULTS, key=lambda n: int(n.split("_")[1])):
            terminalreporter.write_line(RESULTS[name])
