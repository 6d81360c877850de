import pytest

_ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_log():
    """Recorder for the one-line-per-criterion acceptance report."""
    return _ACCEPTANCE_LINES.append


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
