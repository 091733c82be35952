import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from desargues.projective import Plane, special_conditions

settings.register_profile("repo", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")

small_int = st.integers(min_value=-12, max_value=12)
rationals = st.builds(Fraction, st.integers(-30, 30), st.integers(1, 7))
nonzero_rationals = rationals.filter(lambda q: q != 0)


@st.composite
def planes(draw, kind=0):
    a = draw(st.lists(st.integers(-25, 25), min_size=4, max_size=4))
    P = None
    if any(a):
        P = Plane(a)
    if P is None or P.kind() != kind:
        from hypothesis import assume
        assume(False)
    return P


@st.composite
def generic_planes(draw):
    P = draw(planes())
    from hypothesis import assume
    assume(not special_conditions(P.alpha))
    return P


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import LINES
    except ImportError:
        return
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
