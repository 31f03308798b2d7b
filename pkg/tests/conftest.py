import contextlib
import time

import pytest

_RESULTS: dict[int, str] = {}


class _Criterion:
    def __init__(self, number: int, title: str, budget: float | None):
        self.number, self.title, self.budget = number, title, budget
        self.detail = ""


@pytest.fixture
def criterion():
    """Context manager recording one PASS/FAIL line per acceptance criterion."""

    @contextlib.contextmanager
    def _run(number: int, title: str, budget: float | None = None):
        c = _Criterion(number, title, budget)
        t0 = time.perf_counter()
        ok = False
        try:
            yield c
            elapsed = time.perf_counter() - t0
            if budget is not None:
                assert elapsed < budget, f"took {elapsed:.1f} s, budget {budget:.0f} s"
            ok = True
        finally:
            elapsed = time.perf_counter() - t0
            line = (f"ACCEPTANCE {number:>2} {'PASS' if ok else 'FAIL'}  {title}  "
                    f"[{elapsed:.1f} s] {c.detail}").rstrip()
            _RESULTS[number] = line
            print(line)

    return _run


def pytest_terminal_summary(terminalreporter):
    if _RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(_RESULTS):
            terminalreporter.write_line(_RESULTS[k])
