import pytest

from pafamily.report import resolve_conventions

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def conventions():
    return resolve_conventions()


@pytest.fixture
def record_acceptance():
    def record(line: str) -> None:
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
