import pytest

_CRITERIA: dict[int, str] = {}


@pytest.fixture
def criterion_log():
    """Record one PASS/FAIL line per acceptance criterion."""

    def log(number: int, ok: bool, title: str, detail: str) -> None:
        line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
        _CRITERIA[number] = line
        print(line)

    return log


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        terminalreporter.write_line(_CRITERIA[number])
