import os
import time
from contextlib import contextmanager

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "fixed",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "fixed"))

_CRITERIA = []


@pytest.fixture
def criterion():
    """Time a block, record one PASS/FAIL line, and enforce the time limit."""

    @contextmanager
    def run(number, title, limit_s=None):
        start = time.perf_counter()
        notes = []
        ok = False
        try:
            yield notes
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            in_time = limit_s is None or elapsed < limit_s
            status = "PASS" if ok and in_time else "FAIL"
            limit = f" (limit {limit_s:g} s)" if limit_s else ""
            detail = f"; {'; '.join(notes)}" if notes else ""
            line = f"criterion {number}: {status} {title} [{elapsed:.2f} s{limit}]{detail}"
            _CRITERIA.append(line)
            print(line)
        assert in_time, f"criterion {number} took {elapsed:.1f} s, limit {limit_s} s"

    return run


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_CRITERIA, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
