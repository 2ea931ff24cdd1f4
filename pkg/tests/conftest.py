import numpy as np
import pytest
from hypothesis import settings

from spawit import catalog

settings.register_profile("default", max_examples=60, deadline=None)
settings.register_profile("fast", max_examples=10, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def special():
    entry, rho, sigma = catalog.special_case()
    return entry, rho, sigma


@pytest.fixture(scope="session")
def ha():
    return catalog.ha_violation_instance()
