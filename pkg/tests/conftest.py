from pathlib import Path

import numpy as np
import pytest

from satdesign.signmat import parse_glyph

DATA = Path(__file__).parent / "data"


def load(name):
    return parse_glyph((DATA / name).read_text())


@pytest.fixture(scope="session")
def m15_known():
    return load("m15.txt")


@pytest.fixture(scope="session")
def m15_plus():
    return load("m15_plus.txt")


@pytest.fixture(scope="session")
def m15_minus():
    return load("m15_minus.txt")


@pytest.fixture(scope="session")
def h16_known():
    return load("h16.txt")


@pytest.fixture(scope="session")
def g15_known():
    return load("g15_design.txt")


@pytest.fixture(scope="session")
def g1_15_known():
    return load("g1_15_design.txt")


@pytest.fixture(scope="session")
def g16_known():
    return load("g16_design.txt")


@pytest.fixture
def k3_runs():
    # six runs of a 2^3 experiment, levels coded 1/0, pivot first
    return np.array([[1, 1, 1], [1, 0, 0], [1, 0, 1], [0, 0, 1], [0, 1, 1], [0, 1, 0]])


@pytest.fixture
def rng():
    return np.random.default_rng(20260101)


@pytest.fixture
def criterion(request):
    """Record one pass/fail line for an acceptance criterion, then assert it."""
    lines = request.config.stash.setdefault(ACCEPTANCE_KEY, [])

    def check(number, ok, detail):
        lines.append((number, f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"))
        assert ok, detail

    return check


ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines, key=lambda x: (int(str(x[0]).rstrip("abcdefg")), str(x[0]))):
            terminalreporter.write_line(line)
