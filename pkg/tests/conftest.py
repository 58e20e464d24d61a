import contextlib
import time

import pytest


def pytest_configure(config):
    config._acceptance = {}


@pytest.fixture
def criterion(request):
    """Context manager recording one acceptance line: number, PASS/FAIL, time."""
    log = request.config._acceptance

    @contextlib.contextmanager
    def record(number, title, budget=None):
        t0 = time.perf_counter()
        ok = False
        note = ""
        try:
            yield
            ok = True
        finally:
            dt = time.perf_counter() - t0
            if ok and budget is not None and dt > budget:
                ok = False
                note = f" over the {budget:g} s budget"
            log[number] = (ok, title, dt, note)
        if note:
            pytest.fail(f"criterion {number} took {dt:.1f} s,{note}")

    return record


def pytest_terminal_summary(terminalreporter, config):
    log = getattr(config, "_acceptance", {})
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(log):
        ok, title, dt, note = log[n]
        terminalreporter.write_line(
            f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}  ({dt:.2f} s){note}")
