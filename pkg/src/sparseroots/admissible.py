"""Fractional-derivative towers and admissible points.

An admissible point is a grid point where every member of the tower is
"large": at least an eighth of the largest value of ``min_i |g_i|`` over the
grid.  Signs there are cheap to certify, which is why every subdivision point
the engine uses is chosen this way.
"""

from dataclasses import dataclass

from . import stats
from .dyadic import Dyadic
from .errors import ContractViolation, GridDegenerateError
from .numeric import ScaledOracle, SparsePoly, approx_eval_grid_fixed, approx_eval_tuple

__all__ = [
    "FractionalTower",
    "Multipoint",
    "AdmissibleResult",
    "fractional_derivatives",
    "min_abs",
    "admissible_point",
    "certified_signs",
    "PRECISION_CEILING",
]

PRECISION_CEILING = 1 << 22


@dataclass(frozen=True)
class FractionalTower:
    """``(f, f^[1], ..., f^[k-1])``; ``f^[i+1]`` is ``(f^[i])'`` stripped of x-powers."""

    polys: tuple

    def __len__(self):
        return len(self.polys)

    def __getitem__(self, i):
        return self.polys[i]

    def __iter__(self):
        return iter(self.polys)

    @property
    def base(self):
        return self.polys[0]


def fractional_derivatives(f):
    """Tower of fractional derivatives of a polynomial with ``e_1 = 0``.

    Each derived coefficient is the base oracle times an exact integer (a
    product of exponent differences), so no precision is lost along the tower.
    """
    if f.exponents[0] != 0:
        raise ContractViolation("fractional derivatives need a non-zero constant term")
    polys = [f]
    exps = list(f.exponents)
    mults = [1] * len(exps)
    bases = list(f.oracles)
    while len(exps) > 1:
        shift = exps[1]
        mults = [m * e for m, e in zip(mults[1:], exps[1:])]
        exps = [e - shift for e in exps[1:]]
        bases = bases[1:]
        polys.append(SparsePoly(zip(exps, (ScaledOracle(b, m) for b, m in zip(bases, mults)))))
    return FractionalTower(tuple(polys))


@dataclass(frozen=True)
class Multipoint:
    """The grid ``m + (i - t) * delta`` for ``i = 0, ..., 2t``."""

    m: Dyadic
    t: int
    delta: Dyadic

    def __post_init__(self):
        if self.t < 1:
            raise ContractViolation("multipoint needs t >= 1")
        if self.delta.sign() <= 0:
            raise ContractViolation("multipoint spacing must be positive")

    @property
    def points(self):
        return [self.m + self.delta * (i - self.t) for i in range(2 * self.t + 1)]

    @property
    def lo(self):
        return self.m - self.delta * self.t

    @property
    def hi(self):
        return self.m + self.delta * self.t


@dataclass(frozen=True)
class AdmissibleResult:
    """A chosen grid point with certified values of every ``g`` in the tuple.

    ``values[i]`` approximates ``g_i(m_star)`` within ``2**-precision``;
    ``|values[i]| >= 4 * 2**-precision``, so the signs are exact.
    """

    m_star: Dyadic
    ell_star: int
    index: int
    values: tuple
    precision: int

    @property
    def signs(self):
        return tuple(v.sign() for v in self.values)

    @property
    def min_value(self):
        return min(abs(v) for v in self.values)


def min_abs(G, x, L):
    """``min |g(x)|`` over ``g`` in ``G``, within ``2**-L``."""
    return min(abs(v) for v in approx_eval_tuple(G, x, L))


def _round_log2(x):
    """Integer ``l`` with ``|l - log2(x)| <= 1/2`` for a positive dyadic."""
    lb = x.floor_log2()
    # x >= 2**(lb + 1/2)  <=>  x**2 >= 2**(2*lb + 1)
    if x * x >= Dyadic(1, 2 * lb + 1):
        return lb + 1
    return lb


def admissible_point(G, mp, start=1, ceiling=PRECISION_CEILING):
    """An ``(M_G, mp)``-admissible point with its magnitude certificate.

    Precision doubles from ``start`` until some grid point has approximate
    minimum ``M >= 4 * 2**-L``; the grid point maximizing ``M`` (smallest
    index on ties) is returned together with ``ell_star ~ log2 M``.
    """
    points = mp.points
    if points[0].sign() <= 0:
        raise ContractViolation("multipoint must lie on the positive axis")
    G = list(G)
    L = max(1, int(start))
    stats.bump("admissible_points")
    while True:
        K, rows = approx_eval_grid_fixed(G, points, L)
        # 4 * 2**-L in units of 2**-K  (K >= L)
        threshold = 4 << (K - L)
        best = None
        best_m = None
        for i, row in enumerate(rows):
            m = min(abs(v) for v in row)
            if m >= threshold and (best_m is None or m > best_m):
                best, best_m = i, m
        if best is not None:
            vals = tuple(Dyadic(v, -K) for v in rows[best])
            return AdmissibleResult(points[best], _round_log2(Dyadic(best_m, -K)), best, vals, L)
        L *= 2
        if L > ceiling:
            raise GridDegenerateError(
                f"no grid point certified above 2^-{ceiling} around {mp.m.decimal()}"
            )


def certified_signs(res, tower):
    """Signs of every tower member at ``res.m_star`` (never zero)."""
    if len(res.values) != len(tower):
        raise ContractViolation("certificate does not belong to this tower")
    return list(res.signs)
