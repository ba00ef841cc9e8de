from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sparseroots.admissible import (
    Multipoint,
    admissible_point,
    certified_signs,
    fractional_derivatives,
    min_abs,
)
from sparseroots.dyadic import Dyadic
from sparseroots.errors import ContractViolation

from conftest import P, D, exact


def _coeffs(g):
    return list(zip(g.exponents, g.exact_coefficients()))


def test_tower_examples():
    t = fractional_derivatives(P((0, -1), (3, 1)))
    assert [_coeffs(g) for g in t] == [[(0, -1), (3, 1)], [(0, 3)]]
    t = fractional_derivatives(P((0, -2), (2, 1), (5, 1)))
    assert [_coeffs(g) for g in t] == [[(0, -2), (2, 1), (5, 1)], [(0, 2), (3, 5)], [(0, 15)]]
    t = fractional_derivatives(P((0, 7)))
    assert len(t) == 1 and _coeffs(t.base) == [(0, 7)]
    with pytest.raises(ContractViolation):
        fractional_derivatives(P((1, 1), (2, 1)))


def test_tower_shape(rng):
    for _ in range(30):
        k = rng.randint(1, 6)
        exps = sorted(rng.sample(range(1, 50), k - 1)) if k > 1 else []
        f = P((0, 1), *[(e, rng.randint(1, 9)) for e in exps])
        t = fractional_derivatives(f)
        assert len(t) == k
        for i, g in enumerate(t):
            assert g.sparsity == k - i and g.exponents[0] == 0


def test_min_abs_examples():
    assert abs(min_abs([P((1, 1)), P((1, 2))], Dyadic(1), 10) - 1) < Dyadic(1, -10)
    assert abs(min_abs([P((0, -1), (1, 1)), P((0, 5))], Dyadic(1), 10)) < Dyadic(1, -10)
    assert abs(min_abs([P((0, -1), (2, 1)), P((1, 2))], Dyadic(2), 10) - 3) < Dyadic(1, -10)
    # the fractional tower of x^2 - 1 is (x^2 - 1, 2)
    tower = fractional_derivatives(P((0, -1), (2, 1)))
    assert abs(min_abs(tower, Dyadic(2), 10) - 2) < Dyadic(1, -10)


def test_admissible_examples():
    mp = Multipoint(Dyadic(1), 1, D("1/4"))
    assert admissible_point([P((1, 1))], mp).m_star == D("5/4")
    assert admissible_point([P((0, -1), (1, 1))], mp).m_star in (D("3/4"), D("5/4"))


def _check_admissible(G, mp, res):
    exact_terms = [_coeffs(g) for g in G]
    grid = [min(abs(exact(t, x.to_fraction())) for t in exact_terms) for x in mp.points]
    at_star = min(abs(exact(t, res.m_star.to_fraction())) for t in exact_terms)
    assert res.m_star in mp.points
    assert at_star >= max(grid) / 8
    assert Fraction(2) ** (res.ell_star - 1) <= at_star


def test_admissible_tower_example():
    tower = fractional_derivatives(P((0, -2), (2, 1)))
    mp = Multipoint(D("1/2"), 4, D("1/64"))
    res = admissible_point(tower, mp)
    _check_admissible(tower, mp, res)
    assert certified_signs(res, tower) == [-1, 1]


def test_certified_signs_examples():
    tower = fractional_derivatives(P((0, 1), (1, 1)))
    res = admissible_point(tower, Multipoint(D("3/8"), 2, D("1/32")))
    assert certified_signs(res, tower) == [1, 1]
    const = fractional_derivatives(P((0, -3)))
    res = admissible_point(const, Multipoint(Dyadic(1), 1, D("1/4")))
    assert certified_signs(res, const) == [-1]
    with pytest.raises(ContractViolation):
        certified_signs(res, tower)


def test_multipoint_validation():
    with pytest.raises(ContractViolation):
        Multipoint(Dyadic(1), 0, D("1/4"))
    with pytest.raises(ContractViolation):
        Multipoint(Dyadic(1), 1, Dyadic(0))
    mp = Multipoint(Dyadic(1), 2, D("1/8"))
    assert mp.points == [D("3/4"), D("7/8"), Dyadic(1), D("9/8"), D("5/4")]


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.tuples(st.integers(1, 40), st.integers(-50, 50).filter(bool)), max_size=4, unique_by=lambda t: t[0]),
    st.integers(-50, 50).filter(bool),
    st.integers(1, 4000),
    st.integers(1, 6),
)
def test_admissible_property(rest, c0, m, t):
    f = P((0, c0), *rest)
    tower = fractional_derivatives(f)
    delta = Dyadic(1, -14)
    mp = Multipoint(Dyadic(m, -10) + delta * t, t, delta)
    _check_admissible(tower, mp, admissible_point(tower, mp))
