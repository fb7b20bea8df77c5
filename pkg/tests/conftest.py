"""Shared fixtures; collects one verdict per acceptance criterion."""

import pytest

CRITERIA_COUNT = 10
_KEY = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_KEY] = {}


@pytest.fixture
def criterion(request):
    """Record the verdict of an acceptance criterion.

    Call as ``criterion(n, ok, detail)``; the value of ``ok`` is returned so the
    test can assert on it afterwards.
    """
    verdicts = request.config.stash[_KEY]

    def record(n: int, ok: bool, detail: str) -> bool:
        verdicts[n] = (bool(ok), detail)
        return bool(ok)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    verdicts = config.stash.get(_KEY, {})
    if not verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, CRITERIA_COUNT + 1):
        if n in verdicts:
            ok, detail = verdicts[n]
            terminalreporter.write_line(f"CRITERION {n}: {'PASS' if ok else 'FAIL'} - {detail}")
        else:
            terminalreporter.write_line(f"CRITERION {n}: NOT RUN")
