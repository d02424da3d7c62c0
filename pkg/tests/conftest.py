import itertools
import os
import random

import pytest

from nonret.automata import Dfa

LONG = os.environ.get("NONRET_LONG") == "1"


def pytest_collection_modifyitems(config, items):
    if LONG:
        return
    skip = pytest.mark.skip(reason="set NONRET_LONG=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def random_dfa(rng, n, alphabet=("a", "b"), non_returning=False, p_final=0.4):
    lo = 1 if non_returning and n > 1 else 0
    delta = tuple(tuple(rng.randrange(lo, n) for _ in range(n)) for _ in alphabet)
    finals = frozenset(q for q in range(n) if rng.random() < p_final)
    return Dfa(n, tuple(alphabet), delta, 0, finals)


def words(alphabet, max_len):
    for k in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=k)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod and mod.LINES:
        terminalreporter.section("acceptance criteria")
        for line in mod.LINES:
            terminalreporter.write_line(line)
