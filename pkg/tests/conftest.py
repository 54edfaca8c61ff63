import os

import pytest
from hypothesis import HealthCheck, settings

from mvcr.rootdata import build_cartan, weyl_group_of

settings.register_profile("ci", derandomize=True, deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


@pytest.fixture(scope="session")
def A1():
    return build_cartan("A1")


@pytest.fixture(scope="session")
def A2():
    return build_cartan("A2")


@pytest.fixture(scope="session")
def A3():
    return build_cartan("A3")


@pytest.fixture(scope="session")
def W2(A2):
    return weyl_group_of(A2)


@pytest.fixture(scope="session")
def W3(A3):
    return weyl_group_of(A3)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import summary_lines
    except ImportError:
        return
    lines = summary_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
