"""Independent dense verification oracle (exact rational arithmetic).

Used by the test-suite and ``sparseroots verify``.  Nothing here touches the
sparse pipeline: real roots are isolated with Descartes' rule of signs on
integer polynomials after a square-free factorization, and roots in a disk
are counted from numerical root approximations whose Smith error disks are
checked in exact rational arithmetic.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

__all__ = [
    "DensePoly",
    "RootInterval",
    "OracleCeilingError",
    "BoundaryDegenerateError",
    "squarefree_factors",
    "dense_isolate",
    "dense_count_in_disk",
    "taylor_shift",
    "narrow",
    "root_in_interval",
    "ISOLATE_MAX_DEGREE",
    "COUNT_MAX_DEGREE",
]

ISOLATE_MAX_DEGREE = 64
COUNT_MAX_DEGREE = 12


class OracleCeilingError(ValueError):
    pass


class BoundaryDegenerateError(ArithmeticError):
    """A root sits on (or too close to) the boundary of the queried disk."""


def _frac(x):
    if hasattr(x, "to_fraction"):
        return x.to_fraction()
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _sub(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _deriv(a):
    return _trim([i * a[i] for i in range(1, len(a))])


def _divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lc = b[-1]
    while len(a) >= len(b) and a:
        s = len(a) - len(b)
        t = a[-1] / lc
        q[s] = t
        for i, bi in enumerate(b):
            a[s + i] -= t * bi
        a = _trim(a)
    return _trim(q), a


def _monic(a):
    return [c / a[-1] for c in a]


def _gcd(a, b):
    while b:
        _, r = _divmod(a, b)
        a, b = b, r
    return _monic(a)


class DensePoly:
    """``sum(coeffs[i] * x**i)`` with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = _trim(_frac(x) for x in coeffs)
        if not c:
            raise ValueError("the zero polynomial has no roots to isolate")
        self.coeffs = c

    @classmethod
    def from_terms(cls, terms):
        """From ``(exponent, coefficient)`` pairs."""
        terms = [(int(e), _frac(c)) for e, c in terms]
        n = max(e for e, _ in terms)
        c = [Fraction(0)] * (n + 1)
        for e, v in terms:
            c[e] += v
        return cls(c)

    @classmethod
    def from_roots(cls, roots, lead=1):
        c = [_frac(lead)]
        for r in roots:
            r = _frac(r)
            c = [(c[i - 1] if i > 0 else 0) - r * (c[i] if i < len(c) else 0) for i in range(len(c) + 1)]
        return cls(c)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self):
        return f"DensePoly({[str(c) for c in self.coeffs]})"


def squarefree_factors(p):
    """Yun's algorithm: ``[(q_i, i)]`` with ``p = lc * prod q_i**i``, ``q_i`` monic."""
    f = p.coeffs
    if len(f) <= 1:
        return []
    df = _deriv(f)
    a = _gcd(f, df)
    b, _ = _divmod(f, a)
    c, _ = _divmod(df, a)
    d = _sub(c, _deriv(b))
    out = []
    i = 1
    while len(b) > 1:
        a = _gcd(b, d) if d else _monic(b)
        if len(a) > 1:
            out.append((DensePoly(a), i))
        b, _ = _divmod(b, a)
        c, _ = _divmod(d, a) if d else ([], [])
        d = _sub(c, _deriv(b))
        i += 1
    return out


# -- real roots ---------------------------------------------------------


@dataclass(frozen=True)
class RootInterval:
    """A real root in the open interval ``(lo, hi)``, or equal to ``lo == hi``."""

    lo: Fraction
    hi: Fraction
    multiplicity: int

    @property
    def exact(self):
        return self.lo == self.hi

    def contains(self, x):
        x = _frac(x)
        return x == self.lo if self.exact else self.lo < x < self.hi

    @property
    def midpoint(self):
        return (self.lo + self.hi) / 2


def _integer_coeffs(c):
    den = 1
    for x in c:
        den = den * x.denominator // gcd(den, x.denominator)
    return [int(x * den) for x in c]


def _compose_affine(c, a, w):
    """Coefficients of ``p(a + w x)`` (rational)."""
    out = [Fraction(0)] * len(c)
    for coef in reversed(c):
        # out = out * (a + w x) + coef
        nxt = [Fraction(0)] * len(c)
        for i, v in enumerate(out):
            if v:
                nxt[i] += v * a
                if i + 1 < len(nxt):
                    nxt[i + 1] += v * w
        nxt[0] += coef
        out = nxt
    return out


def _shift1(c):
    """Coefficients of ``q(x + 1)`` (integers)."""
    c = list(c)
    n = len(c)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            c[j] += c[j + 1]
    return c


def _variations(c):
    signs = [x > 0 for x in c if x != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def _descartes01(q):
    """Sign variations bounding the roots of ``q`` in ``(0, 1)``."""
    return _variations(_shift1(list(reversed(q))))


def _isolate_open(c, lo, hi):
    """Isolate the roots of a square-free ``c`` in the open interval ``(lo, hi)``."""
    w = hi - lo
    out = []
    stack = [(_integer_coeffs(_compose_affine(c, lo, w)), Fraction(0), Fraction(1))]
    while stack:
        q, a, b = stack.pop()
        v = _descartes01(q)
        if v == 0:
            continue
        if v == 1:
            out.append((lo + w * a, lo + w * b))
            continue
        mid = (a + b) / 2
        n = len(q) - 1
        # left half: 2^n q(x/2); right half: left(x + 1)
        left = [x << (n - i) for i, x in enumerate(q)]
        right = _shift1(left)
        if right[0] == 0:
            out.append((lo + w * mid, lo + w * mid))
            right = right[1:]
        stack.append((right, mid, b))
        stack.append((left, a, mid))
    return sorted(out)


def _sign_at(c, x):
    acc = Fraction(0)
    for v in reversed(c):
        acc = acc * x + v
    return (acc > 0) - (acc < 0)


def _refine(c, lo, hi, width):
    sl = _sign_at(c, lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        sm = _sign_at(c, mid)
        if sm == 0:
            return mid, mid
        if sm == sl:
            lo = mid
        else:
            hi = mid
    return lo, hi


def cauchy_bound(p):
    c = p.coeffs
    lead = abs(c[-1])
    b = 1 + max((abs(x) / lead for x in c[:-1]), default=Fraction(0))
    return Fraction(int(b) + 1)


def dense_isolate(p, lo=None, hi=None, width=None):
    """Isolate every real root of ``p`` in the closed interval ``[lo, hi]``.

    Defaults to the Cauchy bound.  With ``width`` the isolating intervals are
    bisected until narrower than ``width``.  Returns sorted
    :class:`RootInterval` objects carrying multiplicities.
    """
    if not isinstance(p, DensePoly):
        p = DensePoly(p)
    if p.degree > ISOLATE_MAX_DEGREE:
        raise OracleCeilingError(f"degree {p.degree} above {ISOLATE_MAX_DEGREE}")
    B = cauchy_bound(p)
    lo = -B if lo is None else _frac(lo)
    hi = B if hi is None else _frac(hi)
    if lo > hi:
        raise ValueError("empty range")
    factors = squarefree_factors(p)
    # the square-free part has the same roots; its isolating intervals are disjoint
    sq = [Fraction(1)]
    for q, _ in factors:
        sq = _mul(sq, q.coeffs)
    out = []
    for x in sorted({lo, hi}):
        if _sign_at(sq, x) == 0:
            out.append(RootInterval(x, x, _multiplicity_at(factors, x, x)))
    pieces = [(lo, hi)] if lo < hi else []
    if lo < 0 < hi and _sign_at(sq, 0) == 0:
        # zero roots are common for sparse input; report them exactly
        out.append(RootInterval(Fraction(0), Fraction(0), _multiplicity_at(factors, 0, 0)))
        sq = _deflate(sq, Fraction(0))
        pieces = [(lo, Fraction(0)), (Fraction(0), hi)]
    for plo, phi in pieces:
        for a, b in _isolate_open(sq, plo, phi):
            if width is not None and a != b:
                a, b = _refine(sq, a, b, _frac(width))
            out.append(RootInterval(a, b, _multiplicity_at(factors, a, b)))
    out.sort(key=lambda r: (r.lo, r.hi))
    return out


def _squarefree_part(p, avoid=()):
    """Integer coefficients of the square-free part, deflated at the roots in ``avoid``."""
    sq = [Fraction(1)]
    for q, _ in squarefree_factors(p):
        sq = _mul(sq, q.coeffs)
    for x in avoid:
        if _sign_at(sq, x) == 0:
            sq = _deflate(sq, x)
    return _integer_coeffs(sq)


def _sign_int(c, x):
    """Sign of the integer polynomial ``c`` at the rational ``x``."""
    num, den = x.numerator, x.denominator
    acc = 0
    scale = 1
    for v in reversed(c):
        acc = acc * num + v * scale
        scale *= den
    # acc = den**deg * c(x), and den > 0
    return (acc > 0) - (acc < 0)


def narrow(p, r, width):
    """Bisect the isolating interval ``r`` of ``p`` until narrower than ``width``."""
    if r.exact or r.hi - r.lo <= width:
        return r
    c = _squarefree_part(p, (r.lo, r.hi))
    a, b = r.lo, r.hi
    sa = _sign_int(c, a)
    while b - a > width:
        mid = (a + b) / 2
        sm = _sign_int(c, mid)
        if sm == 0:
            return RootInterval(mid, mid, r.multiplicity)
        if sm == sa:
            a = mid
        else:
            b = mid
    return RootInterval(a, b, r.multiplicity)


def root_in_interval(p, r, lo, hi):
    """Whether the root of ``p`` isolated by ``r`` lies in the open ``(lo, hi)``."""
    lo, hi = _frac(lo), _frac(hi)
    if lo >= hi:
        return False
    c = None
    a, b = r.lo, r.hi
    # each cut lands on lo or hi, so three rounds always decide
    for _ in range(3):
        if a == b:
            return lo < a < hi
        if b <= lo or a >= hi:
            return False
        if lo <= a and b <= hi:
            # the root is strictly inside (a, b)
            return True
        if c is None:
            c = _squarefree_part(p, (a, b))
            sa = _sign_int(c, a)
        # bisect at the boundary point inside (a, b) when there is one
        cut = lo if a < lo < b else hi
        sm = _sign_int(c, cut)
        if sm == 0:
            a = b = cut
        elif sm == sa:
            a = cut
        else:
            b = cut
    raise AssertionError("unreachable")


def _mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _deflate(c, x0):
    """Quotient of ``c`` by ``x - x0`` for a root ``x0``."""
    out = [Fraction(0)] * (len(c) - 1)
    acc = Fraction(0)
    for i in range(len(c) - 1, 0, -1):
        acc = acc * x0 + c[i]
        out[i - 1] = acc
    return out


def _multiplicity_at(factors, a, b):
    """Multiplicity of the single root in ``(a, b)`` (or at ``a == b``)."""
    for q, mult in factors:
        c = q.coeffs
        if a == b:
            if _sign_at(c, a) == 0:
                return mult
            continue
        # an endpoint may be a root of this factor; it is simple, divide it out
        for x in (a, b):
            if _sign_at(c, x) == 0:
                c = _deflate(c, x)
        if _sign_at(c, a) * _sign_at(c, b) < 0:
            return mult
    raise ArithmeticError("interval does not isolate a root")


# -- complex roots in a disk --------------------------------------------


def taylor_shift(p, m, r):
    """Exact coefficients ``a_i`` of ``p(m + r x)``."""
    if not isinstance(p, DensePoly):
        p = DensePoly(p)
    return _compose_affine(p.coeffs, _frac(m), _frac(r))


def _cmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _abs2(a):
    return a[0] * a[0] + a[1] * a[1]


def _sqrt_up(x):
    """Rational upper bound for ``sqrt(x)`` within relative ``2**-60``."""
    if x == 0:
        return Fraction(0)
    s = max(64, (x.denominator.bit_length() - x.numerator.bit_length()) // 2 + 64)
    scaled = x * (1 << (2 * s))
    v = -((-scaled.numerator) // scaled.denominator)
    return Fraction(isqrt(v) + 1, 1 << s)


def _root_approximations(c, dps):
    import mpmath

    with mpmath.workdps(dps):
        roots = mpmath.polyroots([mpmath.mpf(x.numerator) / x.denominator for x in reversed(c)],
                                 maxsteps=100 + 4 * dps, extraprec=2 * dps, error=False)
        out = []
        for z in roots:
            z = mpmath.mpc(z)
            out.append((_mpf_fraction(z.real), _mpf_fraction(z.imag)))
    return out


def _mpf_fraction(x):
    sign, man, exp, _ = x._mpf_
    man = -int(man) if sign else int(man)
    if exp >= 0:
        return Fraction(man << exp)
    return Fraction(man, 1 << -exp)


def _count_simple(c, center, radius, dps):
    """Roots of a square-free ``c`` in the open disk, or ``None`` if inconclusive."""
    d = len(c) - 1
    if d == 1:
        z = -c[0] / c[1]
        dist = abs(z - center)
        if dist == radius:
            raise BoundaryDegenerateError("rational root on the disk boundary")
        return 1 if dist < radius else 0
    zs = _root_approximations(c, dps)
    lead = c[-1]
    rads = []
    for i, z in enumerate(zs):
        val = (Fraction(0), Fraction(0))
        for v in reversed(c):
            val = _cmul(val, z)
            val = (val[0] + v, val[1])
        den = (lead, Fraction(0))
        for j, w in enumerate(zs):
            if j != i:
                den = _cmul(den, (z[0] - w[0], z[1] - w[1]))
        dd = _abs2(den)
        if dd == 0:
            return None
        rads.append(_sqrt_up(d * d * _abs2(val) / dd))
    parent = list(range(d))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(d):
        for j in range(i + 1, d):
            gap2 = _abs2((zs[i][0] - zs[j][0], zs[i][1] - zs[j][1]))
            if gap2 <= (rads[i] + rads[j]) ** 2:
                parent[find(i)] = find(j)
    comps = {}
    for i in range(d):
        comps.setdefault(find(i), []).append(i)
    count = 0
    for members in comps.values():
        inside = outside = 0
        for i in members:
            dist2 = _abs2((zs[i][0] - center, zs[i][1]))
            if rads[i] < radius and dist2 < (radius - rads[i]) ** 2:
                inside += 1
            elif dist2 > (radius + rads[i]) ** 2:
                outside += 1
        if inside == len(members):
            count += len(members)
        elif outside != len(members):
            return None
    return count


def dense_count_in_disk(p, center, radius, dps_schedule=(30, 80, 200, 500)):
    """Exact number of complex roots (with multiplicity) in the open disk.

    ``center`` is real.  Raises :class:`BoundaryDegenerateError` when no
    working precision separates the roots from the boundary.
    """
    if not isinstance(p, DensePoly):
        p = DensePoly(p)
    if p.degree > COUNT_MAX_DEGREE:
        raise OracleCeilingError(f"degree {p.degree} above {COUNT_MAX_DEGREE}")
    center = _frac(center)
    radius = _frac(radius)
    if radius <= 0:
        return 0
    total = 0
    for q, mult in squarefree_factors(p):
        for dps in dps_schedule:
            got = _count_simple(q.coeffs, center, radius, dps)
            if got is not None:
                break
        else:
            raise BoundaryDegenerateError("could not separate the roots from the disk boundary")
        total += mult * got
    return total
