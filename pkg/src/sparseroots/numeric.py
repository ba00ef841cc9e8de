"""Coefficient oracles, sparse polynomials and absolute-error evaluation.

A coefficient is never stored as a number.  It is a :class:`CoeffOracle`
that hands out dyadic approximations with absolute error below ``2**-kappa``
for any requested ``kappa``.  Evaluation of a sparse polynomial at a positive
dyadic point runs in fixed-point arithmetic with a working precision that is
chosen up front so that the final absolute error is below ``2**-L``.
"""

import math
import threading
from fractions import Fraction

from . import _kernels, stats
from .dyadic import NEAREST, Dyadic
from .errors import ContractViolation, ZeroCoefficientError

__all__ = [
    "CoeffOracle",
    "RationalOracle",
    "ScaledOracle",
    "SparsePoly",
    "make_rational_oracle",
    "estimate_tau",
    "approx_eval",
    "approx_eval_tuple",
    "approx_eval_grid",
    "approx_eval_grid_fixed",
    "working_precision",
    "TAU_CEILING",
]

# Largest oracle precision requested while certifying non-zero coefficients.
TAU_CEILING = 1 << 20

_MAX_EXPONENT = (1 << 63) - 1


class CoeffOracle:
    """Dyadic approximations of one real coefficient.

    ``approx`` maps a precision ``kappa >= 0`` to a :class:`Dyadic` (or an
    exact rational with power-of-two denominator) within ``2**-kappa`` of the
    coefficient.  The most precise answer seen so far is cached and served for
    every request at a lower precision.
    """

    exact = None

    def __init__(self, approx=None):
        self._approx = approx
        self._lock = threading.Lock()
        self._best = None  # (kappa, Dyadic)
        self._fixed = {}

    def _compute(self, kappa):
        return Dyadic.coerce(self._approx(kappa))

    def query(self, kappa):
        if kappa < 0:
            kappa = 0
        best = self._best
        if best is not None and best[0] >= kappa:
            return best[1]
        value = self._compute(kappa)
        with self._lock:
            if self._best is None or self._best[0] < kappa:
                self._best = (kappa, value)
        return value

    def fixed(self, K):
        """Integer ``F`` with ``|F * 2**-K - coefficient| < 2**-K``."""
        F = self._fixed.get(K)
        if F is None:
            F = self.query(K + 1).fixed(K, NEAREST)
            if len(self._fixed) > 64:
                self._fixed.clear()
            self._fixed[K] = F
        return F

    def scaled(self, factor):
        return ScaledOracle(self, factor)


class RationalOracle(CoeffOracle):
    """Oracle for an exactly known rational coefficient."""

    def __init__(self, value):
        super().__init__()
        self.exact = Fraction(value)
        den = self.exact.denominator
        self._dyadic = Dyadic.coerce(self.exact) if den & (den - 1) == 0 else None

    def _compute(self, kappa):
        if self._dyadic is not None:
            return self._dyadic
        return Dyadic.from_fraction(self.exact, kappa + 1, NEAREST)

    def query(self, kappa):
        if self._dyadic is not None:
            return self._dyadic
        return super().query(kappa)

    def __repr__(self):
        return f"RationalOracle({self.exact})"


class ScaledOracle(CoeffOracle):
    """``factor * base`` for an exact integer ``factor``."""

    def __init__(self, base, factor):
        super().__init__()
        factor = int(factor)
        while isinstance(base, ScaledOracle):
            factor *= base.factor
            base = base.base
        self.base = base
        self.factor = factor
        self._boost = abs(factor).bit_length() + 1
        if base.exact is not None:
            self.exact = base.exact * factor

    def _compute(self, kappa):
        return self.base.query(kappa + self._boost) * self.factor

    def __repr__(self):
        return f"ScaledOracle({self.base!r}, {self.factor})"


def make_rational_oracle(p, q=1):
    """Oracle for the non-zero rational ``p / q``."""
    p = int(p)
    q = int(q)
    if q == 0:
        raise ContractViolation("denominator must be non-zero")
    if p == 0:
        raise ContractViolation("k-nomial coefficients must be non-zero")
    return RationalOracle(Fraction(p, q))


def _as_oracle(c):
    if isinstance(c, CoeffOracle):
        return c
    if isinstance(c, str):
        c = Fraction(c.strip())
    if isinstance(c, Dyadic):
        c = c.to_fraction()
    c = Fraction(c)
    if c == 0:
        raise ContractViolation("k-nomial coefficients must be non-zero")
    return RationalOracle(c)


class SparsePoly:
    """``sum(c_i * x**e_i)`` with strictly increasing exponents ``e_i >= 0``.

    Coefficients may be given as oracles or as anything :class:`Fraction`
    accepts (ints, rationals, ``"p/q"`` and finite decimal strings).
    """

    __slots__ = ("exponents", "oracles", "_tau")

    def __init__(self, terms):
        terms = [(int(e), _as_oracle(c)) for e, c in terms]
        if not terms:
            raise ContractViolation("a sparse polynomial needs at least one term")
        terms.sort(key=lambda t: t[0])
        prev = -1
        for e, _ in terms:
            if e < 0 or e > _MAX_EXPONENT:
                raise ContractViolation(f"exponent {e} out of range")
            if e == prev:
                raise ContractViolation(f"duplicate exponent {e}")
            prev = e
        self.exponents = tuple(e for e, _ in terms)
        self.oracles = tuple(o for _, o in terms)
        self._tau = None

    @classmethod
    def from_coefficients(cls, mapping):
        """Build from ``{exponent: coefficient}`` skipping zero coefficients."""
        return cls((e, c) for e, c in mapping.items() if Fraction(c) != 0)

    @property
    def degree(self):
        return self.exponents[-1]

    @property
    def sparsity(self):
        return len(self.exponents)

    @property
    def terms(self):
        return list(zip(self.exponents, self.oracles))

    @property
    def tau_tilde(self):
        if self._tau is None:
            self._tau = estimate_tau(self)
        return self._tau

    def exact_coefficients(self):
        """Exact rational coefficients, or ``None`` if some oracle is opaque."""
        out = [o.exact for o in self.oracles]
        if any(c is None for c in out):
            return None
        return out

    def normalized(self):
        """``(x**-e_1 * f, e_1)``."""
        e1 = self.exponents[0]
        if e1 == 0:
            return self, 0
        return SparsePoly((e - e1, o) for e, o in self.terms), e1

    def derivative(self):
        terms = [(e - 1, ScaledOracle(o, e)) for e, o in self.terms if e > 0]
        if not terms:
            raise ContractViolation("derivative of a constant is zero")
        return SparsePoly(terms)

    def exact_value(self, x):
        """Exact value at a rational point (rational coefficients only)."""
        coeffs = self.exact_coefficients()
        if coeffs is None:
            raise ContractViolation("exact evaluation needs rational coefficients")
        x = Fraction(x) if not isinstance(x, Dyadic) else x.to_fraction()
        return sum((c * x ** e for e, c in zip(self.exponents, coeffs)), Fraction(0))

    def __repr__(self):
        coeffs = self.exact_coefficients()
        if coeffs is None:
            return f"SparsePoly(exponents={self.exponents})"
        body = " + ".join(f"({c})*x^{e}" for e, c in zip(self.exponents, coeffs))
        return f"SparsePoly({body})"


def estimate_tau(f, ceiling=TAU_CEILING):
    """Integer ``t`` with ``2**-t < |f_i| < 2**t`` for all coefficients.

    Precision is doubled until every approximation clears ``2**(1-kappa)``,
    i.e. is known to within a factor of two.  The result is the smallest
    integer for which the strict bounds are certified by the final
    approximations; it is at most one more than the smallest admissible
    integer for the exact coefficients.
    """
    kappa = 1
    while True:
        approxs = [o.query(kappa) for o in f.oracles]
        floor = Dyadic(1, 1 - kappa)
        if all(abs(a) > floor for a in approxs):
            break
        kappa *= 2
        if kappa > ceiling:
            raise ZeroCoefficientError(
                f"could not certify non-zero coefficients up to {ceiling} bits"
            )
    err = Dyadic(1, -kappa)
    tau = 0
    for a in approxs:
        a = abs(a)
        lo = a - err
        hi = a + err
        # smallest t with hi < 2**t
        t_hi = hi.floor_log2() + 1
        # smallest t with 2**-t < lo
        t_lo = -lo.floor_log2()
        if Dyadic(1, -t_lo) == lo:
            t_lo += 1
        tau = max(tau, t_hi, t_lo)
    return tau


def _log2_max1_upper(c):
    """Upper bound on ``log2(max(1, c))`` as a float."""
    if c <= 1:
        return 0.0
    return c.log2() * (1 + 2.0 ** -40) + 2.0 ** -40


def working_precision(L, k, tau, n, c):
    """Fractional bits for evaluating an ``(n, k, tau)``-nomial at ``c``.

    ``K > L + log k + 1 + tau + (2 log n + 1) * (n log max(1, c) + 2)``, plus
    two guard bits for the floor rounding of the fixed-point products.
    """
    logn = max(n, 1).bit_length()
    logk = max(k, 1).bit_length()
    growth = (2 * logn + 1) * (n * _log2_max1_upper(c) + 2)
    return max(L, 0) + logk + 1 + tau + math.ceil(growth) + 2


def approx_eval(f, c, L):
    """Dyadic ``lam`` with ``|lam - f(c)| < 2**-L`` for a positive dyadic ``c``."""
    c = Dyadic.coerce(c)
    if c.sign() <= 0:
        raise ContractViolation("evaluation point must be positive")
    K = working_precision(L, f.sparsity, f.tau_tilde, f.degree, c)
    stats.note_precision(K)
    C = c.fixed(K, NEAREST)
    coeffs = [o.fixed(K) for o in f.oracles]
    return Dyadic(_kernels.sparse_eval(coeffs, f.exponents, C, K), -K)


def approx_eval_tuple(G, c, L):
    """Approximations of every ``g(c)``, ``g`` in ``G``, each within ``2**-L``.

    All members share one table of repeated squares, computed at the largest
    working precision any member needs.
    """
    if not G:
        return []
    c = Dyadic.coerce(c)
    if c.sign() <= 0:
        raise ContractViolation("evaluation point must be positive")
    K = max(working_precision(L, g.sparsity, g.tau_tilde, g.degree, c) for g in G)
    stats.note_precision(K)
    C = c.fixed(K, NEAREST)
    polys = [([o.fixed(K) for o in g.oracles], g.exponents) for g in G]
    return [Dyadic(v, -K) for v in _kernels.sparse_eval_many(polys, C, K)]


def approx_eval_grid_fixed(G, points, L):
    """Fixed-point form of :func:`approx_eval_grid`: ``(K, rows)`` where
    ``rows[j][i] * 2**-K`` approximates ``G[i](points[j])`` within ``2**-L``.

    One working precision (that of the largest point) and one set of
    fixed-point coefficients serve the whole grid.
    """
    points = [Dyadic.coerce(c) for c in points]
    if not G or not points:
        return 0, [[] for _ in points]
    if min(points).sign() <= 0:
        raise ContractViolation("evaluation point must be positive")
    top = max(points)
    K = max(working_precision(L, g.sparsity, g.tau_tilde, g.degree, top) for g in G)
    stats.note_precision(K)
    polys = [([o.fixed(K) for o in g.oracles], g.exponents) for g in G]
    return K, _kernels.grid_eval(polys, [c.fixed(K, NEAREST) for c in points], K)


def approx_eval_grid(G, points, L):
    """``approx_eval_tuple(G, c, L)`` for every ``c`` in ``points``."""
    K, rows = approx_eval_grid_fixed(G, points, L)
    return [[Dyadic(v, -K) for v in row] for row in rows]
