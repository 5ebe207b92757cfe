"""Shared pytest plumbing.

The acceptance module records one summary line per criterion; the terminal
summary hook replays them after the test table so the pass/fail ledger is
visible even though pytest captures stdout.
"""

ACCEPTANCE_LINES = []


def record_acceptance(line: str) -> None:
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
