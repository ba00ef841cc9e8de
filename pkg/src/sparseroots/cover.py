"""Coverings of all real roots by disjoint counted disks.

``covering_unit`` handles ``[0, 1 + 1/n]``.  Roots above ``n/(n+1)`` are
found as inverses of the roots of the reversed polynomial, and the negative
axis is handled through ``f(-x)``.
"""

import contextvars
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .admissible import fractional_derivatives
from .dyadic import CEIL, NEAREST, Dyadic
from .errors import ContractViolation, SeparationBelowThreshold
from .numeric import ScaledOracle, SparsePoly
from .rootcount import CountedDisk, Disk, TaylorCache, count_roots, taylor_polys, tl_test, wrapper_R
from .weakcover import separated_weak_covering

__all__ = [
    "Covering",
    "covering_unit",
    "reverse_poly",
    "negate_poly",
    "invert_disk",
    "invert_covering",
    "merge_positive",
    "l_covering",
    "isolate",
    "DEFAULT_L_MAX",
]

DEFAULT_L_MAX = 1 << 16


@dataclass
class Covering:
    """Counted disks sorted by centre.

    ``range`` is ``(lo, hi)`` with ``None`` for an infinite end.
    """

    entries: list
    L: int
    range: tuple = (None, None)
    zero_root_multiplicity: int = 0
    poly: object = None
    extra: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def disks(self):
        return [e.disk for e in self.entries]

    @property
    def nonzero_entries(self):
        return [e for e in self.entries if e.disk.radius.sign() > 0]

    def is_isolating(self):
        return self.zero_root_multiplicity <= 1 and all(e.mu == 1 for e in self.nonzero_entries)


def _ceil_log2(n):
    return (n - 1).bit_length()


def reverse_poly(f):
    """``x**n * f(1/x)``: exponents ``e -> n - e`` with the same oracles."""
    n = f.degree
    return SparsePoly((n - e, o) for e, o in f.terms)


def negate_poly(f):
    """``f(-x)``."""
    return SparsePoly((e, ScaledOracle(o, -1) if e % 2 else o) for e, o in f.terms)


def covering_unit(f, L, tower=None):
    """Counted disks of radius ``<= 2**-L`` covering the roots of ``f`` in ``[0, 1 + 1/n]``.

    ``f`` must have a non-zero constant term.  Disks with no roots are
    dropped.
    """
    if f.exponents[0] != 0:
        raise ContractViolation("covering needs a non-zero constant term")
    n, k = f.degree, f.sparsity
    rng = (Fraction(0), 1 + Fraction(1, n))
    if k < 2:
        return Covering([], L, rng, 0, f)
    if tower is None:
        tower = fractional_derivatives(f)
    R = wrapper_R(n, k)
    tau = f.tau_tilde
    Lp = L + _ceil_log2(R) + 4 * tau + 5
    W = separated_weak_covering(f, Lp, 8 * R, tower)
    hpolys = taylor_polys(f, min(k * k, n) + 1)
    entries = []
    for J in W:
        disk = Disk((J.a + J.b).shift(-1), (J.b - J.a).shift(-1))
        if disk.radius.is_zero():
            disk = Disk(disk.center, Dyadic(1, -Lp - 1))
        cd = count_roots(f, tower, disk, hpolys)
        if cd.mu > 0:
            entries.append(cd)
    entries.sort(key=lambda e: e.disk.center)
    return Covering(entries, L, rng, 0, f, {"hpolys": hpolys})


def invert_disk(m, r, tight=False):
    """Image ``(centre, radius)`` of the disk under ``z -> 1/z`` (``m > r >= 0``).

    By default the radius is ``2r / (m^2 - r^2)``, twice the radius of the
    exact image; ``tight=True`` returns the exact image ``r / (m^2 - r^2)``.
    Both are exact rationals.
    """
    m = m.to_fraction() if isinstance(m, Dyadic) else Fraction(m)
    r = r.to_fraction() if isinstance(r, Dyadic) else Fraction(r)
    if not m > r:
        raise ContractViolation("inverted disk must not contain the origin")
    d = m * m - r * r
    return m / d, (r if tight else 2 * r) / d


def _enclose(c, s, bits):
    """Dyadic disk containing the rational disk ``(c, s)``."""
    cd = Dyadic.from_fraction(c, bits, NEAREST)
    sd = Dyadic.from_fraction(abs(cd.to_fraction() - c) + s, bits, CEIL)
    return cd, sd


def _certified_inverse(g, e, hpolys, tries):
    """Dyadic disk around the inverse of ``e.disk`` that holds exactly ``e.mu`` roots.

    The enclosure is pulled back to a disk around the same admissible centre
    that contains ``e.disk``; re-counting that disk certifies the enclosure,
    since a disk squeezed between two disks with ``mu`` roots has ``mu`` roots.
    """
    m, r = e.disk.center, e.disk.radius
    for tight in (False, True):
        c, s = invert_disk(m, r, tight)
        bits = 8 + s.denominator.bit_length() - s.numerator.bit_length()
        for _ in range(tries):
            cd, sd = _enclose(c, s, bits)
            pc, ps = invert_disk(cd, sd, tight=True)
            # the pulled-back radius is about s * m**2
            rb = bits - 2 * m.floor_log2() + 4
            rho = Dyadic.from_fraction(abs(pc - m.to_fraction()) + ps, rb, CEIL)
            if _recount(g, Disk(m, rho), e.mu, hpolys):
                return CountedDisk(Disk(cd, sd), e.mu)
            if not tight:
                break
            bits *= 2
    raise ContractViolation("could not certify an inverted disk")


def invert_covering(C, tries=6):
    """Invert a covering of the reversed polynomial into a covering of ``f``."""
    g = C.poly
    hpolys = C.extra.get("hpolys") if C.extra else None
    out = [_certified_inverse(g, e, hpolys, tries) for e in C.entries]
    out.sort(key=lambda e: e.disk.center)
    n = g.degree if g is not None else 1
    return Covering(out, C.L, (Fraction(n, n + 1), None), 0, None)


def _recount(g, disk, mu, hpolys):
    k = g.sparsity
    count = min(k * k, g.degree) + 1
    if hpolys is None or len(hpolys) < count:
        hpolys = taylor_polys(g, count)
    cache = TaylorCache(hpolys[:count], disk.center)
    return tl_test(g, disk, mu, cache=cache)


def merge_positive(C1, C2, L=None):
    """Merge coverings of ``[0, 1 + 1/n]`` and ``[n/(n+1), oo)``.

    For an intersecting pair the first disk is kept when its centre is at
    most 1, otherwise the second.
    """
    one = Dyadic(1)
    drop1, drop2 = set(), set()
    for i, a in enumerate(C1.entries):
        for j, b in enumerate(C2.entries):
            if a.disk.intersects(b.disk):
                if a.disk.center <= one:
                    drop2.add(j)
                else:
                    drop1.add(i)
    entries = [e for i, e in enumerate(C1.entries) if i not in drop1]
    entries += [e for j, e in enumerate(C2.entries) if j not in drop2]
    entries.sort(key=lambda e: e.disk.center)
    return Covering(entries, C1.L if L is None else L, (Fraction(0), None), 0, None)


def _positive_side(g, L):
    tau = g.tau_tilde
    c1 = covering_unit(g, L)
    rev = reverse_poly(g)
    c2 = invert_covering(covering_unit(rev, L + 6 * tau + 2))
    return merge_positive(c1, c2, L)


def _reflect(C):
    entries = [CountedDisk(Disk(-e.disk.center, e.disk.radius), e.mu) for e in reversed(C.entries)]
    return Covering(entries, C.L, (None, Fraction(0)), 0, None)


def l_covering(f, L, threads=1):
    """Disjoint counted disks of radius ``<= 2**-L`` covering every real root of ``f``.

    A zero root of multiplicity ``e`` is reported as ``zero_root_multiplicity``
    and as a radius-zero disk at the origin.
    """
    g, e1 = f.normalized()
    entries = []
    if g.sparsity >= 2:
        Lint = max(L, g.degree.bit_length() + 4)
        jobs = [(g, Lint), (negate_poly(g), Lint)]
        if threads > 1:
            with ThreadPoolExecutor(max_workers=min(threads, 2)) as pool:
                futs = [pool.submit(contextvars.copy_context().run, _positive_side, *j) for j in jobs]
                pos, neg = [fu.result() for fu in futs]
        else:
            pos, neg = [_positive_side(*j) for j in jobs]
        entries = list(_reflect(neg).entries) + list(pos.entries)
    if e1 > 0:
        entries.append(CountedDisk(Disk(Dyadic(0), Dyadic(0)), e1))
    entries.sort(key=lambda e: e.disk.center)
    bound = Dyadic(1, -L)
    for e in entries:
        if e.disk.radius > bound:
            raise ContractViolation("covering disk wider than requested")
    for a, b in zip(entries, entries[1:]):
        if a.disk.intersects(b.disk):
            raise ContractViolation("covering disks overlap")
    return Covering(entries, L, (None, None), e1, f)


def isolate(f, L_start=2, L_max=DEFAULT_L_MAX, threads=1):
    """Double ``L`` from ``L_start`` until every disk holds exactly one root."""
    g, e1 = f.normalized()
    if e1 > 1:
        raise SeparationBelowThreshold(f"zero is a root of multiplicity {e1}")
    L = max(1, int(L_start))
    last = None
    while L <= L_max:
        C = l_covering(f, L, threads)
        if C.is_isolating():
            return C
        last = C
        L *= 2
    err = SeparationBelowThreshold(f"roots not separated at L = {L_max}")
    err.covering = last
    raise err

