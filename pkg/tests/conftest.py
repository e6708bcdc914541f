import pytest

from automaton_freeness import build_monoid, build_semigroup, load_fixture

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def AM():
    return load_fixture("AM")


@pytest.fixture(scope="session")
def F2():
    return load_fixture("F2")


@pytest.fixture(scope="session")
def F2ID():
    return load_fixture("F2ID")


@pytest.fixture(scope="session")
def sgr_solv():
    return build_semigroup(load_fixture("SGR-SOLV"))


@pytest.fixture(scope="session")
def sgr_unsolv():
    return build_semigroup(load_fixture("SGR-UNSOLV"))


@pytest.fixture(scope="session")
def mon_triv():
    return build_monoid(load_fixture("MON-TRIV"))


@pytest.fixture(scope="session")
def mon_solv():
    return build_monoid(load_fixture("MON-SOLV"))


@pytest.fixture(scope="session")
def mon_unsolv():
    return build_monoid(load_fixture("MON-UNSOLV"))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
