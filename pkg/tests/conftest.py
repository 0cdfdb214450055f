import pytest

from cmtk.catalog import zeta_cm_types


@pytest.fixture(scope="session")
def zeta7():
    return zeta_cm_types(7)


@pytest.fixture(scope="session")
def zeta11():
    return zeta_cm_types(11)


@pytest.fixture(scope="session")
def zeta13():
    return zeta_cm_types(13)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
