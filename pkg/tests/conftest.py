import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def fa():
    from fairseat.fixtures import fixture_a
    return fixture_a()


@pytest.fixture
def fb():
    from fairseat.fixtures import fixture_b
    return fixture_b()


@pytest.fixture
def fc():
    from fairseat.fixtures import fixture_c
    return fixture_c()


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if not test_acceptance.VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(test_acceptance.VERDICTS):
        terminalreporter.write_line(test_acceptance.VERDICTS[key])
