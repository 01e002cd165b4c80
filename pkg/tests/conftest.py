import random

import pytest

from gsbc import Monoid, parse_config


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture
def x_sample():
    return parse_config("2,0,5,1,3;0")


def expand(x, n):
    """First n coordinates of a one-sided config as a plain list."""
    seq = list(x.prefix)
    while len(seq) < n:
        seq += list(x.period)
    return seq[:n]


@pytest.fixture
def monoids():
    return [Monoid.N, Monoid.Z]



_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def acceptance_log(request):
    """Collects one PASS/FAIL line per acceptance criterion for the summary."""
    return request.config.stash.setdefault(_ACCEPTANCE, [])


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
