import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.REPORT:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.REPORT:
            terminalreporter.write_line(line)
