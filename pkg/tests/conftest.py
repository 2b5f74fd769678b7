import pytest

_LINES: list[str] = []


@pytest.fixture
def criterion():
    """record(number, label, ok, detail) -> ok; lines are printed after the run."""

    def record(number, label, ok, detail=""):
        tag = "PASS" if ok else "FAIL"
        _LINES.append(f"[{tag}] criterion {number}: {label}" + (f"  ({detail})" if detail else ""))
        print(_LINES[-1])
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
