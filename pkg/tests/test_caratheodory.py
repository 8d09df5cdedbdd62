import json
import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from laurentbi.caratheodory import (
    Atom,
    CaratheodoryAtoms,
    min_real_on_circles,
    parse_atoms,
    sample_centered,
    sample_random,
    single_atom,
)
from laurentbi.errors import OutsideDomain
from laurentbi.scalars import Domain, QQi
from laurentbi.series import eval_at


def test_trivial_atom_is_constant_one():
    s = single_atom(0).series(8)
    assert s.top == 0 and s[0] == 1
    assert all(s[-n] == 0 for n in range(1, 9))


def test_unit_atom_coefficients_all_two():
    s = single_atom(1).series(10)
    assert [s[-n] for n in range(11)] == [1] + [2] * 10


def test_half_atom_geometric():
    s = single_atom(F(1, 2)).series(10)
    assert [s[-n] for n in range(1, 11)] == [F(2, 2**n) for n in range(1, 11)]


def test_min_real_of_constant():
    assert min_real_on_circles(single_atom(0.0), [1.5, 3.0], 64) == pytest.approx(1.0)


def test_min_real_unit_kernel():
    p = single_atom(1.0)
    m = min_real_on_circles(p, [1.25], 256)
    # (z+1)/(z-1) on |z| = r has real part (r^2 - 1)/|z - 1|^2, smallest at z = -r
    assert m >= 0
    assert m == pytest.approx((1.25**2 - 1) / 2.25**2, rel=1e-12)


def test_min_real_antipodal_pair():
    p = CaratheodoryAtoms(((0.5, 1.0), (0.5, -1.0)))
    theta = 2 * math.pi * np.arange(4096) / 4096
    z = 2 * np.exp(1j * theta)
    oracle = np.min(((z * z + 1) / (z * z - 1)).real)
    assert min_real_on_circles(p, [2.0], 4096) == pytest.approx(oracle, abs=1e-12)
    assert oracle > 0


def test_min_real_rejects_inner_radius():
    with pytest.raises(OutsideDomain):
        min_real_on_circles(single_atom(1.0), [1.0, 2.0], 16)


def test_sampler_deterministic():
    assert sample_random(42) == sample_random(42)
    assert sample_random([3, 9]) == sample_random([3, 9])
    assert sample_random(1) != sample_random(2)


@given(st.integers(0, 2**32), st.integers(1, 4))
def test_sampler_constraints(seed, max_atoms):
    p = sample_random(seed, max_atoms)
    assert 1 <= len(p.atoms) <= max_atoms
    assert abs(sum(a.weight for a in p.atoms) - 1) <= 1e-12
    assert all(a.weight > 0 and abs(a.u) <= 1 + 1e-12 for a in p.atoms)
    c = p.coefficients(12)
    assert max(abs(x) for x in c[1:]) <= 2 + 1e-12


def test_sampler_rejects_bad_atom_count():
    with pytest.raises(ValueError):
        sample_random(0, 5)


def test_sampler_approaches_extreme_first_coefficient():
    best = max(abs(sample_random([77, i]).coefficient(1)) for i in range(10_000))
    assert 2 - best <= 0.02


@given(st.integers(0, 2**32))
def test_centered_sampler_has_zero_first_moment(seed):
    p = sample_centered(seed)
    assert abs(p.coefficient(1)) <= 1e-12


@given(st.integers(0, 2**32))
def test_negation_flips_odd_coefficients(seed):
    p = sample_random(seed)
    q = p.negated()
    for n in range(1, 9):
        sign = -1 if n % 2 else 1
        assert abs(q.coefficient(n) - sign * p.coefficient(n)) <= 1e-14


@given(st.integers(0, 2**32), st.sampled_from([8, 12, 16]))
def test_truncation_against_closed_form(seed, depth):
    p = sample_random(seed)
    s = p.series(depth)
    for z in (2.0, 2j, -1.4142135623730951 - 1.4142135623730951j):
        assert abs(complex(eval_at(s, z)) - complex(p(z))) <= 2 * 2.0**-depth


def test_exact_atoms_and_validation():
    p = CaratheodoryAtoms(((F(1, 3), QQi(F(1, 2), F(1, 2))), (F(2, 3), -1)))
    assert p.domain is Domain.EXACT
    assert p.coefficient(2) == 2 * (F(1, 3) * QQi(F(1, 2), F(1, 2)) ** 2 + F(2, 3))
    with pytest.raises(ValueError):
        CaratheodoryAtoms(((F(1, 2), 0), (F(1, 3), 0)))
    with pytest.raises(ValueError):
        CaratheodoryAtoms(((1.0, 1.1),))
    with pytest.raises(ValueError):
        CaratheodoryAtoms(((-0.5, 0.0), (1.5, 0.0)))


def test_inline_shorthand():
    p = parse_atoms("0.5@1,0.5@-1")
    assert p.domain is Domain.FLOAT
    assert p.atoms == (Atom(0.5, 1 + 0j), Atom(0.5, -1 + 0j))
    e = parse_atoms("1/2@1/2+1/2j, 1/2@-1")
    assert e.domain is Domain.EXACT
    assert e.atoms[0].u == QQi(F(1, 2), F(1, 2))
    with pytest.raises(ValueError):
        parse_atoms("0.5,0.5@1")


def test_json_round_trip():
    for p in (sample_random(5), parse_atoms("1/4@1j,3/4@-1/3")):
        obj = json.loads(json.dumps(p.to_json_obj()))
        assert CaratheodoryAtoms.from_json_obj(obj) == p
