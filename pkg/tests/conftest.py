import pytest
from hypothesis import settings, strategies as st

from ruinmoments.poly import MultiPoly

ACCEPTANCE_LINES: list[str] = []

settings.register_profile("default", deadline=None)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def polys(draw, nvars=None, max_degree=3, max_terms=5):
    n = nvars if nvars is not None else draw(st.sampled_from([2, 3]))
    monos = st.tuples(*[st.integers(0, max_degree)] * n)
    terms = draw(st.dictionaries(monos, small_rationals, max_size=max_terms))
    return MultiPoly(terms, n)


@pytest.fixture
def A3():
    return MultiPoly.variables(3)


@pytest.fixture
def A2():
    return MultiPoly.variables(2)
