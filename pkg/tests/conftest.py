"""Shared test plumbing.

Acceptance tests register a named pass/fail verdict through
``record_acceptance``; a terminal-summary hook prints one line per verdict
at the end of the run so the gate results are visible even when all tests
pass with captured output.
"""

from __future__ import annotations

ACCEPTANCE_RESULTS: dict[str, bool] = {}


def record_acceptance(name: str, ok: bool) -> None:
    ACCEPTANCE_RESULTS[name] = ok


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_line("")
    for name, ok in ACCEPTANCE_RESULTS.items():
        terminalreporter.write_line(f"[ACCEPTANCE] {name}: {'PASS' if ok else 'FAIL'}")
