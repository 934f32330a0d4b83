import pytest
from hypothesis import HealthCheck, settings

from nijrank.catalog import load_catalog

settings.register_profile(
    "nijrank",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("nijrank")


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
