import random
from fractions import Fraction

import pytest

from sparseroots.dyadic import Dyadic
from sparseroots.numeric import SparsePoly


def P(*terms):
    """``P((0, -1), (2, 1))`` is ``x**2 - 1``."""
    return SparsePoly((e, Fraction(c)) for e, c in terms)


def exact(terms, x):
    """Reference evaluation with plain rationals, independent of the package."""
    x = Fraction(x)
    return sum(Fraction(c) * x ** e for e, c in terms)


def D(q):
    """Dyadic from an exactly representable rational."""
    q = Fraction(q)
    d = q.denominator
    assert d & (d - 1) == 0, q
    return Dyadic(q.numerator, -(d.bit_length() - 1))


def random_knomial(rng, n_max=60, k_range=(2, 6), cmax=1024):
    k = rng.randint(*k_range)
    n = rng.randint(k - 1, n_max)
    if k == 1:
        exps = [0]
    else:
        exps = sorted(rng.sample(range(1, n), k - 2) + [0, n]) if k > 2 else [0, n]
    coeffs = [rng.choice([-1, 1]) * rng.randint(1, cmax) for _ in exps]
    return list(zip(exps, coeffs))


@pytest.fixture
def rng():
    return random.Random(20261015)


_ACCEPTANCE = {}


def record(criterion, ok, detail):
    _ACCEPTANCE[criterion] = (ok, detail)


def acceptance_lines():
    return [
        f"criterion {c}: {'PASS' if ok else 'FAIL'} - {detail}"
        for c, (ok, detail) in sorted(_ACCEPTANCE.items())
    ]


def pytest_terminal_summary(terminalreporter):
    lines = acceptance_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
