"""One pass/fail line per acceptance criterion, collected across the session."""
import time
from contextlib import contextmanager

LINES: list = []


@contextmanager
def criterion(number: int, title: str, budget: float):
    """Time a criterion body; it fails on any assertion or when over budget."""
    state = {"detail": ""}
    start = time.perf_counter()
    ok = False
    try:
        yield state
        ok = True
    finally:
        took = time.perf_counter() - start
        within = took < budget
        verdict = "PASS" if ok and within else "FAIL"
        extra = f" {state['detail']}" if state["detail"] else ""
        line = f"{verdict} criterion {number}: {title} ({took:.2f}s, budget {budget:g}s){extra}"
        LINES.append(line)
        print(line)
    assert within, f"criterion {number} took {took:.2f}s, over its {budget:g}s budget"
