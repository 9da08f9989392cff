import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from uccasnacs.fixtures import load_fixture  # noqa: E402
from uccasnacs.integrate import integrate_sentence  # noqa: E402


@pytest.fixture(scope="session")
def rules():
    return load_fixture("rules")


@pytest.fixture(scope="session")
def limitations():
    return load_fixture("limitations")


@pytest.fixture(scope="session")
def integrated(rules, limitations):
    """sent_id -> (aligned, integrated passage, results) over both fixture corpora."""
    out = {}
    for a in list(rules) + list(limitations):
        p, results = integrate_sentence(a)
        out[a.id] = (a, p, results)
    return out


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import summary_lines
    lines = summary_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
