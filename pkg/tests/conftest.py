import itertools

import pytest

from macfactor.combinatorics import Filling

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def partitions_of(n, largest=None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions_of(n - first, first):
            yield (first,) + rest


def all_fillings(shape, m):
    for word in itertools.product(range(1, m + 1), repeat=sum(shape)):
        yield Filling.from_reading_word(shape, word)


# Reference fillings, written top row first.
EXAMPLE2 = Filling.from_top_down([(6, 2), (2, 4, 8), (4, 4, 1, 3)])
EXAMPLE4 = Filling.from_top_down([(1,), (4, 7), (3, 2), (5, 6)])
N1_EXAMPLE = Filling.from_top_down([(2,), (1,), (3,), (2, 3), (1, 2)])
TAU_INPUT = Filling.from_top_down([(1, 4), (3, 5), (2, 6), (1, 3), (2, 4), (3, 3, 3), (4, 4, 4)])
TAU_OUTPUT = Filling.from_top_down([(1, 4), (3, 5), (6, 2), (3, 1), (4, 2), (3, 3, 3), (4, 4, 4)])
TAU_STEPS = [
    TAU_INPUT,
    Filling.from_top_down([(1, 4), (3, 5), (2, 6), (1, 3), (4, 2), (3, 3, 3), (4, 4, 4)]),
    Filling.from_top_down([(1, 4), (3, 5), (2, 6), (3, 1), (4, 2), (3, 3, 3), (4, 4, 4)]),
    TAU_OUTPUT,
]


@pytest.fixture
def example2():
    return EXAMPLE2


@pytest.fixture
def example4():
    return EXAMPLE4
