from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import settings, strategies as st

from qfock.fockspace import FockParams
from qfock.operators import Generators
from qfock.qarith import LaurentPoly

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

GRID = [(1, 1, 2), (2, 1, 2), (1, 2, 2), (2, 2, 3)]
DEGENERATE = [(n, m, p) for n, m in ((1, 0), (0, 1), (0, 2)) for p in range(3)]

ACCEPTANCE_LINES = []


@lru_cache(maxsize=None)
def exact_generators(n, m, p) -> Generators:
    return Generators.exact(FockParams(n, m, p))


@pytest.fixture(params=GRID, ids=lambda c: "n{}m{}p{}".format(*c))
def grid_gens(request):
    return exact_generators(*request.param)


coefficients = st.fractions(min_value=-5, max_value=5, max_denominator=6)
laurent_polys = st.dictionaries(st.integers(-4, 4), coefficients, max_size=5).map(LaurentPoly)
nonzero_laurent = laurent_polys.filter(lambda a: not a.is_zero())
rational_points = st.fractions(min_value=Fraction(-3), max_value=Fraction(3), max_denominator=7).filter(
    lambda x: x != 0
)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
