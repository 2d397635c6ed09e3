import numpy as np
import pytest

from doublekit.groups import builtin_group
from doublekit.reps import quantum_double

ALL_GROUPS = ["trivial", "Z2", "Z3", "Z4", "Klein4", "S3", "D4", "Q8", "A4", "S4"]
SMALL_GROUPS = ["trivial", "Z2", "Z3", "Z4", "Klein4", "S3", "D4", "Q8"]
GATED_GROUPS = SMALL_GROUPS + ["A4"]

# lines collected by the acceptance tests, echoed in the terminal summary
ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture(params=SMALL_GROUPS)
def small_group(request):
    return builtin_group(request.param)


@pytest.fixture(params=ALL_GROUPS)
def any_group(request):
    return builtin_group(request.param)


@pytest.fixture(params=ALL_GROUPS)
def any_double(request):
    return quantum_double(builtin_group(request.param))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
