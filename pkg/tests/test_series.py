import json
import math
import random
from fractions import Fraction as F

import numpy as np
import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from conftest import X, gaussian_rationals, small_fractions, taylor_in_x
from laurentbi.errors import BadNormalization, DepthExhausted, DomainMismatch, NotInvertible
from laurentbi.scalars import Domain, QQi, rational_str
from laurentbi.series import (
    LaurentSeries,
    MeromorphicMap,
    derivative,
    eval_at,
    exp_series,
    int_power,
    log_series,
    multiply,
    pow_real,
    reciprocal,
    shift,
    z_derivative,
    z_log_derivative,
)

E = Domain.EXACT
S = LaurentSeries.from_terms


def inv_series(values, depth=None, **kw):
    return LaurentSeries.from_inverse_powers(values, depth=depth, **kw)


# -- small worked examples ----------------------------------------------------


def test_additive_cancellation():
    a = S({1: 1, -1: 1}, depth=6)
    assert a + S({-1: -1}, depth=6) == S({1: 1}, depth=6)


def test_difference_of_squares():
    p = S({0: 1, -1: 2}, depth=6) * S({0: 1, -1: -2}, depth=6)
    assert p.same_coefficients(S({0: 1, -2: -4}, depth=6))
    assert p.valid_to == 6


def test_product_with_reciprocal_is_one():
    g = S({1: 1, 0: -2, -1: 1}, depth=8)
    r = reciprocal(g)
    assert r.top == -1 and r.depth == 10 and r.valid_to == 10
    one = g * r
    # product window: min(8 + 1, 10 - 1) = 9
    assert one.depth == 9 and one.valid_to == 9
    assert one.same_coefficients(S({0: 1}, depth=9))


def test_derivative_examples():
    assert derivative(S({1: 1, -1: 1}, depth=6)).same_coefficients(S({0: 1, -2: -1}, depth=6))
    assert derivative(S({1: 1, 0: -2, -1: 1}, depth=6)).same_coefficients(S({0: 1, -2: -1}, depth=6))


def test_derivative_drops_deepest_term():
    d = derivative(S({1: 1, -4: 1}, depth=4))
    assert d.depth == 4
    assert d.same_coefficients(S({0: 1}, depth=4), -4)


@given(small_fractions(), small_fractions(), small_fractions(), small_fractions())
def test_derivative_of_general_map(b0, b1, b2, b3):
    g = MeromorphicMap.from_coefficients([b0, b1, b2, b3], depth=6)
    d = derivative(g.series)
    assert [d[-k] for k in range(5)] == [1, 0, -b1, -2 * b2, -3 * b3]


def test_reciprocal_of_one():
    assert reciprocal(S({0: 1}, depth=5)) == S({0: 1}, depth=5)


@given(small_fractions(), small_fractions(), small_fractions())
def test_z_over_g_closed_form(b0, b1, b2):
    g = MeromorphicMap.from_coefficients([b0, b1, b2], depth=8)
    q = shift(reciprocal(g.series), 1)
    expected = [1, -b0, b0 * b0 - b1, -(b0**3 - 2 * b1 * b0 + b2)]
    assert [q[-k] for k in range(4)] == expected


def test_reciprocal_geometric_oracle():
    r = reciprocal(S({1: 1, -1: 1}, depth=12))
    # 1/(z (1 + z^-2)) = sum_k (-1)^k z^(-2k-1)
    for n in range(0, r.valid_to + 1):
        want = 0 if n % 2 == 0 else (-1) ** ((n - 1) // 2)
        assert r[-n] == want


def test_reciprocal_of_zero_leading_raises():
    with pytest.raises(NotInvertible):
        reciprocal(LaurentSeries.zero_series(4))


def test_log_exp_trivial():
    assert log_series(S({0: 1}, depth=5)).is_zero
    assert exp_series(LaurentSeries.zero_series(5)) == S({0: 1}, depth=5)


def test_exp_log_round_trip_example():
    a = S({0: 1, -1: 2, -2: 2}, depth=10)
    assert exp_series(log_series(a)) == a


@given(small_fractions())
def test_log_mercator(c1):
    L = log_series(S({0: 1, -1: c1}, depth=10))
    for n in range(1, 11):
        assert L[-n] == F((-1) ** (n + 1), n) * c1**n


def test_log_and_pow_normalization_errors():
    with pytest.raises(BadNormalization):
        log_series(S({0: 2, -1: 1}, depth=4))
    with pytest.raises(BadNormalization):
        pow_real(S({1: 1}, depth=4), F(1, 2))
    with pytest.raises(BadNormalization):
        exp_series(S({0: 1}, depth=4))


def test_exact_series_rejects_float_exponent():
    with pytest.raises(DomainMismatch):
        pow_real(S({0: 1, -1: 1}, depth=4), 0.3)


def test_mixed_domains_rejected():
    a = S({0: 1}, depth=4)
    with pytest.raises(DomainMismatch):
        a + a.to_float()


def test_pow_identity():
    p = inv_series([1, 2, F(1, 3), -1], depth=6)
    assert pow_real(p, 1) == p


@given(small_fractions(), small_fractions(), small_fractions(), small_fractions(max_num=5, max_den=6))
def test_pow_first_coefficients(c1, c2, c3, a):
    p = inv_series([1, c1, c2, c3], depth=6)
    got = pow_real(p, a)
    assert got[-1] == a * c1
    assert got[-2] == a * (a - 1) / 2 * c1**2 + a * c2
    assert got[-3] == a * (a - 1) * (a - 2) / 6 * c1**3 + a * (a - 1) * c1 * c2 + a * c3


def test_pow_against_symbolic_oracle():
    t = F(2, 5)
    poly = [1, F(3, 2), F(-1, 3), F(1, 7)]
    got = pow_real(inv_series(poly, depth=8), t)
    expr = sum(sp.Rational(c.numerator, c.denominator) * X**k for k, c in enumerate(poly))
    want = taylor_in_x(expr ** sp.Rational(2, 5), 8)
    assert [got[-k] for k in range(9)] == want


def test_pow_float_irrational_exponent():
    t = math.sqrt(2) / 3
    poly = [1, 0.4, -0.2, 0.1]
    got = pow_real(inv_series(poly, depth=6).to_float(), t)
    want = np.exp(t * np.log(np.polyval(poly[::-1], 0.3)))
    assert abs(complex(eval_at(got, 1 / 0.3)) - want) < 1e-5  # truncation at depth 6
    c1, c2, c3 = poly[1:]
    assert abs(got[-3] - (t * (t - 1) * (t - 2) / 6 * c1**3 + t * (t - 1) * c1 * c2 + t * c3)) < 1e-12


@given(st.lists(small_fractions(), min_size=2, max_size=5), st.integers(0, 5))
def test_integer_power_matches_repeated_product(tail, m):
    a = inv_series([1] + tail, depth=6)
    prod = S({0: 1}, depth=6)
    for _ in range(m):
        prod = multiply(prod, a)
    assert pow_real(a, m) == prod
    assert int_power(a, m) == prod


# -- log-derivative closed forms ---------------------------------------------


def test_log_derivative_of_identity():
    assert z_log_derivative(MeromorphicMap.identity(6)).same_coefficients(S({0: 1}, depth=6))


@pytest.mark.parametrize("seed", range(100))
def test_log_derivative_closed_forms(seed):
    r = random.Random(seed)
    b0, b1, b2 = (F(r.randint(-20, 20), r.randint(1, 9)) for _ in range(3))
    g = MeromorphicMap.from_coefficients([b0, b1, b2], depth=8)
    L = z_log_derivative(g)
    assert [L[-k] for k in range(4)] == [1, -b0, b0**2 - 2 * b1, -(b0**3 - 3 * b1 * b0 + 3 * b2)]
    # inverse side written with the inverse's leading relations B0 = -b0, B1 = -b1, B2 = -b2 - b0 b1
    h = MeromorphicMap.from_coefficients([-b0, -b1, -b2 - b0 * b1], depth=8)
    M = z_log_derivative(h)
    assert [M[-k] for k in range(4)] == [1, b0, b0**2 + 2 * b1, b0**3 + 6 * b1 * b0 + 3 * b2]


def test_log_derivative_gaussian_points():
    z = QQi(F(1, 2), F(-3, 4))
    g = MeromorphicMap.from_coefficients([QQi(1, 1), F(2, 3), QQi(0, F(1, 5))], depth=8)
    L = z_log_derivative(g)
    b0, b1 = g.b(0), g.b(1)
    assert L[-2] == b0 * b0 - 2 * b1
    assert eval_at(S({0: 1, -1: z}, depth=2), 2) == QQi(1) + z / 2


# -- evaluation ---------------------------------------------------------------


def test_eval_examples():
    assert eval_at(S({1: 1, -1: 1}, depth=4), 2) == F(5, 2)
    assert eval_at(S({1: 1, 0: -2, -1: 1}, depth=4), 3) == F(4, 3)
    assert abs(complex(eval_at(S({1: 1, 0: -2, -1: 1}, depth=4).to_float(), 3.0)) - 4 / 3) < 1e-15


@pytest.mark.parametrize("depth", [6, 10, 16])
def test_eval_truncated_reciprocal(depth):
    r = reciprocal(S({1: 1, -1: 1}, depth=depth)).truncate(depth)
    assert abs(complex(eval_at(r.to_float(), 2.0)) - 0.4) <= 2.0**-depth


def test_eval_vectorized_matches_scalar():
    s = inv_series([1, 0.5, -0.25j, 0.125], depth=3)
    zs = np.array([2.0, 3j, -1.5 + 1j])
    vec = eval_at(s, zs)
    assert np.allclose(vec, [complex(eval_at(s, complex(z))) for z in zs], atol=1e-15)


# -- properties ------------------------------------------------------------


def series_strategy(depth=6, top_max=1):
    return st.builds(
        lambda top, vals: S({top - i: v for i, v in enumerate(vals)}, depth=depth),
        st.integers(-1, top_max),
        st.lists(small_fractions(), min_size=1, max_size=depth),
    )


@given(series_strategy(), series_strategy(), series_strategy())
def test_ring_laws_exact(a, b, c):
    lhs = (a * b) * c
    rhs = a * (b * c)
    assert lhs.same_coefficients(rhs, -min(lhs.valid_to, rhs.valid_to))
    d1 = a * (b + c)
    d2 = a * b + a * c
    assert d1.same_coefficients(d2, -min(d1.valid_to, d2.valid_to))


@given(st.lists(gaussian_rationals(), min_size=2, max_size=7), st.integers(0, 1))
def test_reciprocal_identity_exact(vals, top):
    if vals[0] == 0:
        vals[0] = QQi(1)
    a = S({top - i: v for i, v in enumerate(vals)}, depth=6)
    prod = a * reciprocal(a)
    assert prod.same_coefficients(S({0: 1}, depth=prod.depth), -prod.valid_to)


@given(st.lists(st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False), min_size=3, max_size=7))
def test_reciprocal_identity_float(vals):
    vals = [1 + 0j] + vals[1:]
    a = inv_series(vals, depth=6).to_float()
    prod = a * reciprocal(a)
    assert prod.max_abs_diff(S({0: 1}, depth=prod.depth).to_float(), -prod.valid_to) <= 1e-12 * 10**6


@given(st.lists(small_fractions(), min_size=1, max_size=6))
def test_exp_log_round_trip(tail):
    a = inv_series([1] + tail, depth=8)
    assert exp_series(log_series(a)).same_coefficients(a, -a.valid_to)


@given(st.lists(st.complex_numbers(max_magnitude=1, allow_nan=False, allow_infinity=False), min_size=1, max_size=6))
def test_exp_log_round_trip_float(tail):
    a = inv_series([1] + tail, depth=8).to_float()
    assert exp_series(log_series(a)).max_abs_diff(a) <= 1e-12


@given(st.lists(small_fractions(), min_size=1, max_size=5))
def test_fractional_power_squares_back(tail):
    a = inv_series([1] + tail, depth=8)
    half = pow_real(a, F(1, 2))
    assert (half * half).same_coefficients(a, -8)


@given(st.lists(small_fractions(), min_size=4, max_size=4))
def test_z_log_derivative_equals_euler_over_series(b):
    g = MeromorphicMap.from_coefficients(b, depth=7)
    lhs = z_log_derivative(g) * g.series
    rhs = z_derivative(g.series)
    assert lhs.same_coefficients(rhs, -min(lhs.valid_to, rhs.valid_to))


def test_validity_propagation_rules():
    a = S({1: 1, 0: 3}, depth=6, valid_to=4)
    b = S({0: 1, -1: 1}, depth=5, valid_to=5)
    assert (a + b).valid_to == 4
    p = multiply(a, b)
    assert (p.depth, p.valid_to) == (min(6 - 0, 5 - 1), min(4 - 0, 5 - 1))
    r = reciprocal(a)
    assert (r.depth, r.valid_to) == (8, 6)
    assert z_derivative(a).valid_to == 4
    assert log_series(b).valid_to == 5


def test_truncate_cannot_extend():
    with pytest.raises(DepthExhausted):
        S({0: 1}, depth=3).truncate(4)


def test_zero_series_normal_form():
    z = S({1: 1}, depth=4) - S({1: 1}, depth=4)
    assert z.top == 0 and z.is_zero and z.valid_to == z.depth


def test_map_normalization_enforced():
    with pytest.raises(BadNormalization):
        MeromorphicMap(S({1: 2}, depth=3))
    with pytest.raises(AttributeError):
        MeromorphicMap.identity(3).series = None


@given(st.lists(gaussian_rationals(), min_size=1, max_size=5), st.integers(-2, 1))
def test_json_round_trip_exact(vals, top):
    a = S({top - i: v for i, v in enumerate(vals)}, depth=6)
    obj = json.loads(json.dumps(a.to_json_obj()))
    assert LaurentSeries.from_json_obj(obj) == a


def test_json_round_trip_float():
    a = inv_series([1, 0.1, 1 / 3, -2e-17 + 1j], depth=5).to_float()
    assert LaurentSeries.from_json_obj(json.loads(json.dumps(a.to_json_obj()))) == a


def test_json_rationals_as_strings():
    obj = S({0: F(3, 4)}, depth=1).to_json_obj()
    assert obj["coeffs"][0] == [0, "3/4", "0/1"]
    assert rational_str(F(-6, 4)) == "-3/2"
