import os
import sys
from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from vsing.state import FockState, WhittakerParams, partitions  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

small_rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
nonzero_rationals = small_rationals.filter(bool)


@st.composite
def monomials(draw, max_weight=5):
    w = draw(st.integers(0, max_weight))
    return draw(st.sampled_from(partitions(w)))


@st.composite
def states(draw, params, max_weight=4, max_terms=4):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        terms[draw(monomials(max_weight))] = draw(small_rationals)
    return FockState(params, terms)


@st.composite
def whittaker_params(draw, ps=(2, 3), rs=(1, 2)):
    p = draw(st.sampled_from(ps))
    r = draw(st.sampled_from(rs))
    head = tuple(draw(small_rationals) for _ in range(r))
    return WhittakerParams(p, r, head + (draw(nonzero_rationals),))


@pytest.fixture
def m1_2():
    return WhittakerParams.vacuum(2)


@pytest.fixture
def wp_2():
    """p=2, r=1, zeta=(0, 2): the worked instance used throughout."""
    return WhittakerParams(2, 1, (0, 2))


# acceptance criteria record one line each; printed after the run
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
