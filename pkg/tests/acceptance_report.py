"""Collects one pass/fail line per acceptance criterion."""

import time
from contextlib import contextmanager

LINES: list[str] = []


@contextmanager
def criterion(number: int, title: str, budget: float):
    """Time the body; record PASS only when it finished cleanly within ``budget`` seconds."""
    start = time.perf_counter()
    state = {"detail": ""}
    try:
        yield state
    except BaseException as e:
        elapsed = time.perf_counter() - start
        _record(number, title, False, elapsed, budget, f"{type(e).__name__}: {e}")
        raise
    elapsed = time.perf_counter() - start
    ok = elapsed < budget
    _record(number, title, ok, elapsed, budget, state["detail"])
    assert ok, f"criterion {number} took {elapsed:.2f}s, budget {budget}s"


def _record(number, title, ok, elapsed, budget, detail):
    line = f"criterion {number} {'PASS' if ok else 'FAIL'}: {title} ({elapsed:.2f}s / {budget:g}s)"
    if detail:
        line += f" {detail}"
    LINES.append(line)
    print(line)
