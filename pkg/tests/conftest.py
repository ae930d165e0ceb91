import pytest

_LINES: list[str] = []


@pytest.fixture
def criterion_log():
    """Collects one PASS/FAIL line per acceptance criterion for the terminal summary."""
    def log(label: str, ok: bool, detail: str = "") -> None:
        line = f"{label}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else "")
        _LINES.append(line)
        print(line)
    return log


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
