import pytest

_LINES = []


@pytest.fixture
def report():
    """Record one ``criterion N: PASS|FAIL`` line; printed now and again in the summary."""

    def emit(number, checks):
        ok = all(passed for passed, _ in checks)
        detail = "; ".join(f"{'ok' if passed else 'FAILED'} {text}" for passed, text in checks)
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} ({detail})"
        print(line)
        _LINES.append(line)
        return ok

    return emit


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
