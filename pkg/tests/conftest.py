import pytest

from artifact.logjac import build_semigroup, log_jacobian_ladder

from brute import S11


@pytest.fixture(scope="session")
def s11():
    return build_semigroup(S11)


@pytest.fixture(scope="session")
def ladder11(s11):
    return log_jacobian_ladder(s11)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
