"""Shared fixtures plus a terminal summary line per acceptance check."""

from __future__ import annotations

import pytest


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = {}
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance" not in nodeid:
                continue
            if getattr(rep, "when", "call") not in ("call", "setup"):
                continue
            name = nodeid.split("::")[-1]
            verdict = "PASS" if status == "passed" else "FAIL"
            # setup reports for passed tests are not in stats; call wins
            if name not in lines or verdict == "FAIL":
                lines[name] = verdict
    if not lines:
        return
    terminalreporter.ensure_newline()
    terminalreporter.section("acceptance", sep="=")
    for name in sorted(lines):
        terminalreporter.write_line(f"ACCEPTANCE {name}: {lines[name]}")


@pytest.fixture
def rng():
    import numpy as np

    return np.random.default_rng(20260825)
