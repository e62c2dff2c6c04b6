"""Shared pytest hooks.

The acceptance tests register one summary line per criterion here; the hook
echoes them after the run so the pass/fail ledger is visible in the normal
(captured) pytest output.
"""

acceptance_lines = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_lines:
            terminalreporter.write_line(line)
