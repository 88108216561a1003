import pytest

CLAIM_LINES: list[str] = []


@pytest.fixture
def report_claim(capsys):
    def record(result):
        line = result.line()
        CLAIM_LINES.append(line)
        with capsys.disabled():
            print("\n" + line)
        return result
    return record


def pytest_terminal_summary(terminalreporter):
    if CLAIM_LINES:
        terminalreporter.section("acceptance criteria")
        for line in CLAIM_LINES:
            terminalreporter.write_line(line)
