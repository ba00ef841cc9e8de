"""Certified root counting in disks centred on the positive real axis.

For ``f(m + r x) = sum a_i x^i`` only ``a_0, ..., a_{k^2}`` are ever
computed.  ``a_i = r^i * h_i(m)`` with ``h_i = f^(i) / i!``, and ``h_i`` is a
k-nomial with exact integer binomial scalings, so the values ``h_i(m)`` are
shared by every disk with the same centre.
"""

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from . import stats
from .admissible import Multipoint, admissible_point
from .dyadic import Dyadic
from .errors import ContractViolation, WrapperFailed
from .numeric import ScaledOracle, SparsePoly, approx_eval_tuple

__all__ = [
    "Disk",
    "SoftResult",
    "CountedDisk",
    "soft_compare",
    "taylor_polys",
    "TaylorCache",
    "taylor_coeff",
    "tl_test",
    "count_roots",
    "wrapper_R",
    "SOFT_DELTA",
    "SOFT_CEILING",
]

SOFT_DELTA = Dyadic(1, -7)
SOFT_CEILING = 1 << 20
_E_R_FACTOR = Dyadic(65, -6)


@dataclass(frozen=True)
class Disk:
    """Open disk of radius ``radius`` around the real point ``center``.

    A zero radius only appears for the degenerate disk at the origin that
    reports a zero root.
    """

    center: Dyadic
    radius: Dyadic

    def __post_init__(self):
        if self.radius.sign() < 0:
            raise ContractViolation("disk radius must be non-negative")

    @property
    def lo(self):
        return self.center - self.radius

    @property
    def hi(self):
        return self.center + self.radius

    def contains(self, x):
        """Whether the real point ``x`` (dyadic or rational) lies in the open disk."""
        x = x.to_fraction() if isinstance(x, Dyadic) else Fraction(x)
        return abs(x - self.center.to_fraction()) < self.radius.to_fraction()

    def intersects(self, other):
        return abs(self.center - other.center) < self.radius + other.radius

    def contains_disk(self, other):
        return abs(self.center - other.center) + other.radius <= self.radius


@dataclass(frozen=True)
class CountedDisk:
    disk: Disk
    mu: int


class SoftResult(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNDECIDED = "undecided"


def soft_compare(approx_l, approx_r, delta=SOFT_DELTA, start=1, ceiling=SOFT_CEILING):
    """Soft test of ``E_l > E_r`` for non-negative ``E_l``, ``E_r``.

    ``approx_l(P)`` and ``approx_r(P)`` return dyadics within ``2**-P``.
    ``TRUE`` certifies ``E_l > E_r`` and ``FALSE`` certifies ``E_l < E_r``.
    ``UNDECIDED`` certifies ``E_l / (1 + delta) < E_r <= (1 + delta) * E_l``.
    """
    delta = Dyadic.coerce(delta)
    one_d = Dyadic(1) + delta
    P = max(1, int(start))
    zero = Dyadic(0)
    while True:
        el = approx_l(P)
        er = approx_r(P)
        eps = Dyadic(1, -P)
        l_lo, l_hi = max(el - eps, zero), el + eps
        r_lo, r_hi = max(er - eps, zero), er + eps
        if l_lo > r_hi:
            return SoftResult.TRUE
        if r_lo > l_hi:
            return SoftResult.FALSE
        if r_lo * one_d > l_hi and r_hi <= l_lo * one_d:
            return SoftResult.UNDECIDED
        P *= 2
        if P > ceiling:
            raise ContractViolation("soft comparison of two vanishing expressions")


def taylor_polys(f, count):
    """``[f^(i) / i! for i in range(count)]`` (``None`` beyond the degree)."""
    out = []
    for i in range(count):
        terms = [(e - i, ScaledOracle(o, comb(e, i))) for e, o in f.terms if e >= i]
        out.append(SparsePoly(terms) if terms else None)
    return out


class TaylorCache:
    """Values ``h_i(m)`` at one centre, refined on demand."""

    def __init__(self, hpolys, m):
        self.hpolys = hpolys
        self.m = m
        self._vals = [None] * len(hpolys)
        self._prec = [None] * len(hpolys)

    def values(self, precs):
        """``h_i(m)`` within ``2**-precs[i]`` for each ``i``."""
        need = [
            i for i, p in enumerate(precs)
            if self.hpolys[i] is not None and (self._prec[i] is None or self._prec[i] < p)
        ]
        if need:
            P = max(precs[i] for i in need)
            vals = approx_eval_tuple([self.hpolys[i] for i in need], self.m, P)
            for i, v in zip(need, vals):
                self._vals[i] = v
                self._prec[i] = P
        return [v if v is not None else Dyadic(0) for v in self._vals]

    def coeffs(self, r, P):
        """``a_i = r^i h_i(m)`` for the disk of radius ``r``, each within ``2**-P``."""
        # |r^i| * 2**-q <= 2**-P  for  q = P + i * (floor_log2 r + 1)
        lg = r.floor_log2() + 1
        precs = [max(0, P + i * lg) for i in range(len(self.hpolys))]
        vals = self.values(precs)
        return [v * r ** i for i, v in enumerate(vals)]


def taylor_coeff(f, disk, i, L):
    """``a_i`` of ``f(m + r x)`` within ``2**-L``."""
    if i > f.degree:
        return Dyadic(0)
    cache = TaylorCache(taylor_polys(f, i + 1), disk.center)
    return cache.coeffs(disk.radius, L)[i]


class _DiskTerms:
    """Sums of ``|a_i|`` for one disk, shared by all ``l``."""

    def __init__(self, cache, radius, count):
        self.cache = cache
        self.radius = radius
        self.count = count
        self._by_prec = {}
        self.extra = (count + 1).bit_length() + 2

    def coeffs(self, P):
        got = self._by_prec.get(P)
        if got is None:
            got = self.cache.coeffs(self.radius, P + self.extra)
            self._by_prec[P] = got
        return got

    def e_l(self, l):
        return lambda P: abs(self.coeffs(P)[l])

    def e_r(self, l):
        def approx(P):
            a = self.coeffs(P)
            s = Dyadic(0)
            for i, v in enumerate(a):
                if i != l:
                    s = s + abs(v)
            return s * _E_R_FACTOR
        return approx


def tl_test(f, disk, l, cache=None, terms=None, start=1):
    """Truncated Pellet test: ``True`` certifies exactly ``l`` roots in ``disk``.

    Requires the tail ``sum_{i > k^2} |a_i|`` to be at most ``|a_0| / 128``.
    """
    k = f.sparsity
    if terms is None:
        count = min(k * k, f.degree) + 1
        if cache is None:
            cache = TaylorCache(taylor_polys(f, count), disk.center)
        terms = _DiskTerms(cache, disk.radius, count)
    if l >= terms.count:
        return False
    stats.bump("tl_tests")
    res = soft_compare(terms.e_l(l), terms.e_r(l), SOFT_DELTA, start=start)
    return res is SoftResult.TRUE


def wrapper_R(n, k):
    return (1 << (8 * k + 4)) * n ** (5 * k + 16)


def count_roots(f, tower, disk, hpolys=None):
    """Grow ``disk`` until some ring is root-free and count the roots inside.

    Returns a :class:`CountedDisk` whose disk contains the input disk, has
    radius at most ``R * r`` and holds exactly ``mu`` roots of ``f``.
    """
    m, r = disk.center, disk.radius
    n, k = f.degree, f.sparsity
    if r.sign() <= 0:
        raise ContractViolation("counting needs a positive radius")
    R = wrapper_R(n, k)
    if m < r + r * (2 * R * n):
        raise ContractViolation("disk too close to the origin for the wrapper")
    t = k * k
    spacing = Dyadic(1, r.floor_log2() - (t - 1).bit_length())
    res = admissible_point(tower, Multipoint(m, t, spacing))
    m_star = res.m_star
    r2 = r.shift(1)
    M = 256 * n ** 5
    count = min(t, n) + 1
    if hpolys is None:
        hpolys = taylor_polys(f, count)
    cache = TaylorCache(hpolys[:count], m_star)
    radius = r2 * (16 * n)
    # |a_0| = |f(m*)| >= 2**(ell* - 1), which bounds the bits the soft test needs
    seed = max(1, 4 - res.ell_star)
    for _ in range(k + 1):
        terms = _DiskTerms(cache, radius, count)
        for l in range(k + 1):
            if tl_test(f, Disk(m_star, radius), l, terms=terms, start=seed):
                return CountedDisk(Disk(m_star, radius), l)
        radius = radius * M
    raise WrapperFailed(f"no ring around {m_star.decimal()} passed the counting test")
