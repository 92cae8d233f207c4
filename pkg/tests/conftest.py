import random

import pytest
from hypothesis import strategies as st

from scatterlab.clopen import ClopenSet
from scatterlab.ordinals import Ordinal
from scatterlab.space import Space

ACCEPTANCE_LINES: list[str] = []


@st.composite
def ordinals(draw, max_exponent=4, max_coefficient=6, max_terms=4):
    exps = draw(st.lists(st.integers(0, max_exponent), max_size=max_terms, unique=True))
    exps.sort(reverse=True)
    return Ordinal((e, draw(st.integers(1, max_coefficient))) for e in exps)


def random_clopen(rng: random.Random, space: Space, points: list, max_pieces: int = 3) -> ClopenSet:
    """Union of random intervals with endpoints drawn from ``points``."""
    pieces = []
    for _ in range(rng.randint(0, max_pieces)):
        a, b = sorted(rng.sample(points, 2))
        pieces.append((None if rng.random() < 0.2 else a, b))
    return ClopenSet.from_intervals(space, pieces)


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
