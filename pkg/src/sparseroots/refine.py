"""Newton/bisection refinement of isolating intervals at admissible points.

The interval ``(a, b)`` brackets exactly one simple root of a tower member on
which that member is monotone.  Each iteration tries a Newton step from the
endpoint with the smaller function value and probes two admissible points at
distance about ``w/N`` on either side of the Newton candidate.  A bracket of
width ``O(w/N)`` squares ``N``; anything else falls back to bisection at an
admissible point near the midpoint and takes the square root of ``N``.
"""

import math
from dataclasses import dataclass

from . import stats
from .admissible import AdmissibleResult, Multipoint, admissible_point
from .dyadic import Dyadic
from .errors import ContractViolation, RefinementStalled
from .numeric import approx_eval

__all__ = ["IsolatingInterval", "refine", "iteration_ceiling"]


@dataclass(frozen=True)
class IsolatingInterval:
    """``(a, b)`` with ``f(a) * f(b) < 0`` and admissibility certificates."""

    a: Dyadic
    b: Dyadic
    sign_a: int
    sign_b: int
    cert_a: AdmissibleResult = None
    cert_b: AdmissibleResult = None

    def __post_init__(self):
        if not self.a < self.b:
            raise ContractViolation("isolating interval needs a < b")
        if self.sign_a * self.sign_b != -1:
            raise ContractViolation("isolating interval needs a sign change")

    @property
    def width(self):
        return self.b - self.a


def iteration_ceiling(k, n, tau, L):
    return 64 * k * (math.log2(max(n, 2)) + math.log2(max(tau + L, 2)) + 8)


def _level_of(f, tower):
    for i, g in enumerate(tower):
        if g is f:
            return i
    raise ContractViolation("refined polynomial must be a member of the tower")


def _spacing(w, k, log2N):
    """Dyadic grid spacing ``<= w * ceil(k/2) / (8 k^4 N)``."""
    num = w * ((k + 1) // 2)
    den_bits = (8 * k ** 4 - 1).bit_length() + log2N
    return Dyadic(1, num.floor_log2() - den_bits)


def refine(f, tower, I, L):
    """Shrink the isolating interval ``I`` of ``f`` to width below ``2**-L``.

    ``f`` must be a member of ``tower`` (the fractional-derivative tower of
    the top-level polynomial); every new endpoint is admissible for the whole
    tower, so signs of all members are known there.  An interval that is
    already narrow enough is returned unchanged.
    """
    bound = Dyadic(1, -L)
    if I.width <= bound:
        return I
    level = _level_of(f, tower)
    k = len(tower)
    t = k * k
    df = f.derivative()
    tau = f.tau_tilde
    limit = iteration_ceiling(k, f.degree, tau, L)
    rho_floor = Dyadic(1, -L - 2)

    a, b = I.a, I.b
    sa, sb = I.sign_a, I.sign_b
    ca, cb = I.cert_a, I.cert_b
    log2N = 2
    hint = [max((c.precision for c in (ca, cb) if c is not None), default=1)]

    def probe(center, spacing):
        res = admissible_point(tower, Multipoint(center, t, spacing), start=max(1, hint[0] // 2))
        hint[0] = res.precision
        return (res.m_star, res.values[level].sign(), res)

    def newton(x, rho):
        target = 4 - rho.floor_log2()
        P = target + 8
        cap = 8 * (target + 64) + 4 * tau
        while P <= cap:
            fv = approx_eval(f, x, P)
            dv = approx_eval(df, x, P)
            eps = Dyadic(1, -P)
            ad = abs(dv)
            if ad > eps * 4:
                lhs = eps * (abs(fv) + ad + eps * 2) * 16
                if lhs <= rho * ad * (ad - eps):
                    return x - fv.div(dv, target + 1)
            P *= 2
        return None

    def value_at(cert, fallback):
        return abs(cert.values[level]) if cert is not None else fallback

    iterations = 0
    while b - a >= bound:
        iterations += 1
        if iterations > limit:
            raise RefinementStalled(
                f"no convergence after {limit} iterations on ({a.decimal()}, {b.decimal()})"
            )
        stats.note_iteration()
        w = b - a
        rho = w.shift(-log2N)
        if rho < rho_floor:
            rho = rho_floor
        probes = []
        success = False

        xi = a if value_at(ca, Dyadic(1)) <= value_at(cb, Dyadic(1)) else b
        lam = newton(xi, rho)
        # lam is rounded to the probe scale, so it may sit just past an endpoint
        if lam is not None and a - rho < lam < b + rho:
            spacing = _spacing(w, k, log2N)
            hw = spacing * t
            left, right = lam - rho, lam + rho
            if left - hw > a:
                probes.append(probe(left, spacing))
            if right + hw < b:
                probes.append(probe(right, spacing))
            if probes:
                na, nb, nsa, nsb, nca, ncb = _bracket(a, b, sa, sb, ca, cb, probes)
                if nb - na <= (rho + hw) * 2:
                    success = True
                a, b, sa, sb, ca, cb = na, nb, nsa, nsb, nca, ncb

        if success:
            log2N *= 2
            continue
        if b - a < bound:
            break
        w = b - a
        mid = (a + b).shift(-1)
        m = probe(mid, _spacing(w, k, 0))
        a, b, sa, sb, ca, cb = _bracket(a, b, sa, sb, ca, cb, [m])
        log2N = max(2, log2N // 2)

    return IsolatingInterval(a, b, sa, sb, ca, cb)


def _bracket(a, b, sa, sb, ca, cb, probes):
    pts = [(a, sa, ca)] + sorted(probes, key=lambda p: p[0]) + [(b, sb, cb)]
    for (x0, s0, c0), (x1, s1, c1) in zip(pts, pts[1:]):
        if s0 != s1:
            return x0, x1, s0, s1, c0, c1
    raise ContractViolation("sign change lost during refinement")
