"""Shared pytest hooks."""

import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    # replay the acceptance gate lines; passing tests' stdout is captured
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "ACCEPTANCE_LINES", None) if module else None
    if lines:
        terminalreporter.section("acceptance gate")
        for line in lines:
            terminalreporter.write_line(line)
