import sys

import pytest

from rhombic.assemblees import canonicalize

RUNNING_BLOCKS = [[2, 10, 12, 7], [5, 9, 1, 8, 6], [3, 11, 4]]


@pytest.fixture
def running_assemblee():
    return canonicalize(RUNNING_BLOCKS)



def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
