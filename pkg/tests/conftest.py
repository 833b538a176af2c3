import os
import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", max_examples=1000, deadline=None, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE_LINES = []


@st.composite
def bit_probs(draw, m=None, max_m=5):
    if m is None:
        m = draw(st.integers(1, max_m))
    return draw(arrays(np.float64, (m,), elements=st.floats(0.05, 0.95)))


@st.composite
def shaped_alphabets(draw, max_m=5, max_n=3):
    """(X, b) with m <= max_m bits, N <= max_n dimensions and nonzero energy."""
    b = draw(bit_probs(max_m=max_m))
    n = draw(st.integers(1, max_n))
    X = draw(arrays(np.float64, (1 << b.size, n), elements=st.floats(-5, 5)))
    X[0, 0] += 1.0 if np.sum(X ** 2) < 1e-3 else 0.0
    return X, b


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def report():
    def emit(criterion, ok, detail=""):
        line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'} {detail}".rstrip()
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok
    return emit
