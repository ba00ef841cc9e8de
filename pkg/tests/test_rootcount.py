import math
from fractions import Fraction

import pytest

from sparseroots.admissible import fractional_derivatives
from sparseroots.dyadic import Dyadic
from sparseroots.errors import ContractViolation
from sparseroots.oracle import DensePoly, dense_count_in_disk
from sparseroots.rootcount import (
    Disk,
    SoftResult,
    count_roots,
    soft_compare,
    taylor_coeff,
    tl_test,
    wrapper_R,
)

from conftest import P, D

ONE = lambda P: Dyadic(1)
ZERO = lambda P: Dyadic(0)


def test_soft_compare_examples():
    assert soft_compare(ONE, ZERO, D("1/128")) is SoftResult.TRUE
    assert soft_compare(ZERO, ONE, D("1/128")) is SoftResult.FALSE
    assert soft_compare(ONE, ONE, D("1/128")) is SoftResult.UNDECIDED


def test_soft_compare_refines_close_values():
    third = Fraction(1, 3)
    l = lambda P: Dyadic.from_fraction(third + Fraction(1, 2 ** 30), P + 1)
    r = lambda P: Dyadic.from_fraction(third, P + 1)
    # the gap is well inside the delta band, so the answer may be TRUE or UNDECIDED
    assert soft_compare(l, r) in (SoftResult.TRUE, SoftResult.UNDECIDED)
    l = lambda P: Dyadic.from_fraction(Fraction(1, 2), P + 1)
    assert soft_compare(l, r) is SoftResult.TRUE
    assert soft_compare(r, l) is SoftResult.FALSE


def test_soft_compare_vanishing():
    with pytest.raises(ContractViolation):
        soft_compare(ZERO, ZERO, ceiling=64)


def test_disk():
    d = Disk(D("3/2"), D("1/8"))
    assert d.contains(Fraction(3, 2) + Fraction(1, 10)) and not d.contains(D("13/8"))
    assert d.intersects(Disk(D("7/4"), D("1/4"))) and not d.intersects(Disk(D("7/4"), D("1/8")))
    assert Disk(Dyadic(1), Dyadic(1)).contains_disk(d)
    with pytest.raises(ContractViolation):
        Disk(Dyadic(1), Dyadic(-1))


def test_taylor_coeff_examples():
    f = P((0, Fraction(-1, 2)), (1, 1))
    assert taylor_coeff(f, Disk(D("1/2"), D("1/4")), 1, 20) == D("1/4")
    g = P((0, -2), (2, 1))
    disk = Disk(D("3/2"), D("1/8"))
    assert [taylor_coeff(g, disk, i, 30) for i in range(3)] == [D("1/4"), D("3/8"), D("1/64")]
    assert taylor_coeff(g, disk, 3, 30) == Dyadic(0)


def test_taylor_coeff_non_dyadic():
    f = P((0, Fraction(1, 3)), (5, Fraction(-2, 7)))
    disk = Disk(D("5/8"), D("1/16"))
    m, r = Fraction(5, 8), Fraction(1, 16)
    # a_i = r^i * f^(i)(m) / i!
    exact = [Fraction(1, 3) - Fraction(2, 7) * m ** 5, -Fraction(10, 7) * m ** 4 * r, -Fraction(20, 7) * m ** 3 * r ** 2]
    for i, a in enumerate(exact):
        assert abs(taylor_coeff(f, disk, i, 40).to_fraction() - a) < Fraction(1, 2 ** 40)


def test_tl_test_examples():
    f = P((0, Fraction(-1, 2)), (1, 1))
    disk = Disk(D("1/2"), D("1/4"))
    assert tl_test(f, disk, 1) is True
    assert tl_test(f, disk, 0) is False
    g = P((0, -2), (2, 1))
    assert tl_test(g, Disk(D("3/2"), D("1/8")), 1) is True
    # 3/8 > 65/64 * (1/4 + 1/64) = 1105/4096
    assert Fraction(3, 8) > Fraction(65, 64) * (Fraction(1, 4) + Fraction(1, 64)) == Fraction(1105, 4096)
    assert tl_test(g, Disk(D("3/2"), D("1/8")), 0) is False


def test_wrapper_constant():
    assert wrapper_R(2, 2) == 2 ** 46


def _dense(f):
    return DensePoly.from_terms(zip(f.exponents, f.exact_coefficients()))


def test_count_sqrt2():
    f = P((0, -2), (2, 1))
    m = Dyadic(math.isqrt(2 << 120), -60)  # within 2^-60 of sqrt(2)
    r = Dyadic(1, -55)
    cd = count_roots(f, fractional_derivatives(f), Disk(m, r))
    assert cd.mu == 1
    assert cd.disk.contains_disk(Disk(m, r))
    assert cd.disk.radius <= r * wrapper_R(2, 2)
    assert dense_count_in_disk(_dense(f), cd.disk.center.to_fraction(), cd.disk.radius.to_fraction()) == 1


def test_count_no_real_roots():
    f = P((0, 1), (2, 1))
    cd = count_roots(f, fractional_derivatives(f), Disk(Dyadic(1), Dyadic(1, -60)))
    assert cd.mu == 0
    assert dense_count_in_disk(_dense(f), cd.disk.center.to_fraction(), cd.disk.radius.to_fraction()) == 0


def test_count_double_root():
    f = P((0, Fraction(1, 4)), (1, -1), (2, 1))
    cd = count_roots(f, fractional_derivatives(f), Disk(D("1/2"), Dyadic(1, -64)))
    assert cd.mu == 2
    assert dense_count_in_disk(_dense(f), cd.disk.center.to_fraction(), cd.disk.radius.to_fraction()) == 2


def test_count_precondition():
    f = P((0, Fraction(1, 4)), (1, -1), (2, 1))
    with pytest.raises(ContractViolation):
        count_roots(f, fractional_derivatives(f), Disk(D("1/2"), Dyadic(1, -50)))
