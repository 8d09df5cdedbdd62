from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from laurentbi.scalars import QQi

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

X = sp.Symbol("x")  # x = 1/z


def small_fractions(max_num=9, max_den=7):
    return st.builds(
        Fraction,
        st.integers(-max_num, max_num),
        st.integers(1, max_den),
    )


def gaussian_rationals(max_num=5, max_den=4):
    return st.builds(QQi, small_fractions(max_num, max_den), small_fractions(max_num, max_den))


def to_fraction(v) -> Fraction:
    v = sp.nsimplify(v)
    return Fraction(int(v.p), int(v.q))


def taylor_in_x(expr, n):
    """Coefficients of x^0..x^n of a sympy expression analytic at x = 0."""
    s = sp.series(expr, X, 0, n + 1).removeO()
    poly = sp.Poly(sp.expand(s), X)
    return [to_fraction(poly.coeff_monomial(X**k)) for k in range(n + 1)]


@pytest.fixture
def rng():
    import numpy as np

    return np.random.default_rng(12345)


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
