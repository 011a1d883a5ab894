import time
from contextlib import contextmanager

RESULTS: dict[int, tuple[str, str, float]] = {}


@contextmanager
def criterion(number: int, title: str, budget: float):
    """Record a pass/fail line for one acceptance criterion, enforcing its time budget."""
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        RESULTS[number] = ("FAIL", title, time.perf_counter() - start)
        raise
    elapsed = time.perf_counter() - start
    status = "PASS" if elapsed <= budget else "FAIL"
    RESULTS[number] = (status, title, elapsed)
    assert elapsed <= budget, f"criterion {number} took {elapsed:.1f}s, budget {budget:.0f}s"


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        status, title, elapsed = RESULTS[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {title}  ({elapsed:.1f}s)")
