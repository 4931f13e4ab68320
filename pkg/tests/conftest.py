import numpy as np
import pytest
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

EXAMPLE1 = np.array([[1, 2, 5], [1 / 2, 1, 3], [1 / 5, 1 / 3, 1]])
EXAMPLE1_PROJECTED = np.array(
    [[1, 1.882072, 5.313293], [0.531329, 1, 2.823108], [0.188207, 0.35422, 1]]
)
EXAMPLE1_GM = np.array([2.15443469, 1.14471424, 0.40548013])
COUNTEREXAMPLE_4X4 = np.array(
    [[1, 2, 1, 3], [1 / 2, 1, 1, 1], [1, 1, 1, 2], [1 / 3, 1, 1 / 2, 1]]
)


@pytest.fixture
def example1():
    return EXAMPLE1.copy()


@pytest.fixture
def counterexample():
    return COUNTEREXAMPLE_4X4.copy()


def reciprocal_from_upper(upper_logs, n):
    b = np.zeros((n, n))
    b[np.triu_indices(n, 1)] = upper_logs
    m = np.exp(b - b.T)
    np.fill_diagonal(m, 1.0)
    iu = np.triu_indices(n, 1)
    m[iu[1], iu[0]] = 1.0 / m[iu]
    return m


@st.composite
def reciprocal_matrices(draw, min_n=3, max_n=8, spread=3.0):
    n = draw(st.integers(min_n, max_n))
    logs = draw(
        arrays(np.float64, n * (n - 1) // 2, elements=st.floats(-spread, spread, allow_nan=False))
    )
    return reciprocal_from_upper(logs, n)


@st.composite
def positive_vectors(draw, min_n=2, max_n=10):
    n = draw(st.integers(min_n, max_n))
    logs = draw(arrays(np.float64, n, elements=st.floats(-5, 5, allow_nan=False)))
    return np.exp(logs)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.RESULTS:
        terminalreporter.write_line(line)
