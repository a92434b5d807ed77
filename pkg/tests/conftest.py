import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from numradius import Matrix2

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

finite = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False)
complexes = st.builds(complex, finite, finite)
matrices = st.builds(Matrix2, complexes, complexes, complexes, complexes)
angles = st.floats(min_value=0.0, max_value=2 * np.pi, allow_nan=False)


def scale_of(A: Matrix2) -> float:
    return max(1.0, A.frobenius)


@pytest.fixture
def rng():
    return np.random.default_rng(20261014)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is not None and acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in acceptance.RESULTS:
            terminalreporter.write_line(line)
