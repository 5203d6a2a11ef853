import pytest

from cubicfold.pipeline import Options, verify_all

FULL_RUN_SEED = 0


@pytest.fixture(scope="session")
def full_reports():
    """One ``verify_all`` run over every table row, shared by the slow tests."""
    return verify_all(FULL_RUN_SEED, Options())


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
