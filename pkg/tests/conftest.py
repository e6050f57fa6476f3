import pytest

VERDICTS = []


@pytest.fixture
def verdict():
    """Record one acceptance line; the test still asserts on its own."""
    def record(name, ok, detail=""):
        VERDICTS.append((name, bool(ok), detail))
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in VERDICTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
