import pytest

from ffperm import suites


@pytest.fixture(scope="session")
def suite_rows():
    """Run every named suite once per test session and share the rows."""
    return {name: suites.run_suite(name) for name in suites.SUITE_NAMES}
