import pytest

_CRITERIA: dict[int, str] = {}


@pytest.fixture
def criterion():
    """Record one acceptance line, then assert it."""

    def check(num: int, name: str, ok: bool, detail: str) -> None:
        _CRITERIA[num] = f"[{'PASS' if ok else 'FAIL'}] {num:>2}. {name}: {detail}"
        assert ok, f"criterion {num} ({name}) failed: {detail}"

    return check


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for num in sorted(_CRITERIA):
            terminalreporter.write_line(_CRITERIA[num])
