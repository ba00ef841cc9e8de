from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sparseroots.dyadic import CEIL, FLOOR, NEAREST, Dyadic

dyadics = st.builds(Dyadic, st.integers(-10**30, 10**30), st.integers(-200, 200))


def test_canonical_form():
    assert Dyadic(12) == Dyadic(3, 2)
    assert Dyadic(12).mantissa == 3 and Dyadic(12).exponent == 2
    z = Dyadic(0, 17)
    assert (z.mantissa, z.exponent) == (0, 0)
    assert Dyadic(1, -1) + Dyadic(1, -2) == Dyadic(3, -2)


def test_coerce():
    assert Dyadic.coerce(Fraction(3, 8)) == Dyadic(3, -3)
    assert Dyadic.coerce(5) == Dyadic(5)
    with pytest.raises(TypeError):
        Dyadic.coerce(Fraction(1, 3))


def test_rounding_modes():
    third = Fraction(1, 3)
    assert Dyadic.from_fraction(third, 4, FLOOR) == Dyadic(5, -4)
    assert Dyadic.from_fraction(third, 4, CEIL) == Dyadic(6, -4)
    assert Dyadic.from_fraction(-third, 4, FLOOR) == Dyadic(-6, -4)
    assert abs(Dyadic.from_fraction(third, 10, NEAREST).to_fraction() - third) <= Fraction(1, 2048)
    assert Dyadic(7, -3).round_to(1, FLOOR) == Dyadic(1, -1)
    assert Dyadic(7, -3).round_to(1, CEIL) == Dyadic(1)


def test_division():
    q = Dyadic(1).div(Dyadic(3), 20)
    assert abs(q.to_fraction() - Fraction(1, 3)) <= Fraction(1, 2 ** 21)


def test_log2_helpers():
    assert Dyadic(1, -3).floor_log2() == -3
    assert Dyadic(7, -3).floor_log2() == -1
    assert Dyadic(-8).floor_log2() == 3


def test_string_round_trip_examples():
    for d in (Dyadic(0), Dyadic(1, -1), Dyadic(-7), Dyadic(12345, -300)):
        assert Dyadic.parse(str(d)) == d
    assert str(Dyadic(1, -1)) == "1*2^-1"
    assert Dyadic(1, -1).decimal().startswith("5.0000000000000000e-1")
    with pytest.raises(ValueError):
        Dyadic.parse("0.5")


@given(dyadics, dyadics)
def test_ring_operations_are_exact(a, b):
    fa, fb = a.to_fraction(), b.to_fraction()
    assert (a + b).to_fraction() == fa + fb
    assert (a - b).to_fraction() == fa - fb
    assert (a * b).to_fraction() == fa * fb
    assert (a < b) == (fa < fb)
    assert (a == b) == (fa == fb)


@given(dyadics)
def test_parse_round_trip(a):
    assert Dyadic.parse(str(a)) == a
    assert a.mantissa == 0 or a.mantissa % 2 != 0


@given(dyadics, st.integers(-50, 100))
def test_round_to_error(a, bits):
    for mode, lo, hi in ((FLOOR, -1, 0), (CEIL, 0, 1), (NEAREST, Fraction(-1, 2), Fraction(1, 2))):
        r = a.round_to(bits, mode).to_fraction()
        err = (r - a.to_fraction()) * Fraction(2) ** bits
        assert lo <= err <= hi
