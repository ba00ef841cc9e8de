"""Weak coverings of the positive roots of a k-nomial and separation merging.

The tower ``f, f^[1], ..., f^[k-1]`` is processed from the top: the last
member is a monomial without positive roots, and between two consecutive
intervals that cover the roots of ``f^[i+1]`` the member ``f^[i]`` is
monotone, so a sign change isolates exactly one root which is then refined.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .admissible import Multipoint, admissible_point, fractional_derivatives
from .dyadic import Dyadic
from .errors import ContractViolation
from .refine import IsolatingInterval, refine

__all__ = [
    "WeakInterval",
    "WeakCovering",
    "weak_covering",
    "separate",
    "separated_weak_covering",
    "is_separated",
]


@dataclass(frozen=True)
class WeakInterval:
    """``(a, b)`` isolating a root of tower member ``level``.

    Endpoint certificates hold certified values of every tower member.
    Merged intervals have ``level = None``.
    """

    a: Dyadic
    b: Dyadic
    cert_a: object = None
    cert_b: object = None
    level: int = None

    @property
    def width(self):
        return self.b - self.a

    def sign_at_a(self, i):
        return self.cert_a.values[i].sign()

    def sign_at_b(self, i):
        return self.cert_b.values[i].sign()


@dataclass
class WeakCovering:
    intervals: list
    L: int
    a_star: object  # AdmissibleResult
    b_star: object
    tower: object = None
    extra: dict = field(default_factory=dict)

    @property
    def range(self):
        return (self.a_star.m_star, self.b_star.m_star)

    def __len__(self):
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)


def _ceil_log2(n):
    return (n - 1).bit_length()


def _anchor_points(f, tower):
    """Admissible ``a*`` near ``2**(-2tau-2)`` and ``b*`` near ``1 + 2/n``."""
    n = f.degree
    k = f.sparsity
    tau = f.tau_tilde
    # spacing is a power of two at most min(1/n, 2^(-2tau-2)) / (2k^2)
    spacing = Dyadic(1, -max(_ceil_log2(n), 2 * tau + 2) - _ceil_log2(k * k) - 1)
    t = k * k
    low = Dyadic(1, -2 * tau - 2)
    high = Dyadic(1) + Dyadic(1, 1 - (n.bit_length() - 1))
    a_star = admissible_point(tower, Multipoint(low, t, spacing))
    b_star = admissible_point(tower, Multipoint(high, t, spacing))
    # every positive root lies above 1/(1 + 2^(2 tau)) > 2^(-2tau-1)
    if not a_star.m_star < Dyadic(1, -2 * tau - 1):
        raise ContractViolation("lower anchor above the positive root bound")
    if not b_star.m_star.to_fraction() >= 1 + Fraction(1, n):
        raise ContractViolation("upper anchor below 1 + 1/n")
    return a_star, b_star


def weak_covering(f, L, tower=None):
    """Weak covering of the roots of ``f`` in ``[0, 1 + 1/n]`` by intervals of width ``< 2**-L``."""
    if f.exponents[0] != 0:
        raise ContractViolation("weak covering needs a non-zero constant term")
    if tower is None:
        tower = fractional_derivatives(f)
    k = len(tower)
    if k < 2:
        raise ContractViolation("weak covering needs at least two terms")
    a_star, b_star = _anchor_points(f, tower)
    sentinels = [
        WeakInterval(a_star.m_star, a_star.m_star, a_star, a_star),
        WeakInterval(b_star.m_star, b_star.m_star, b_star, b_star),
    ]
    current = sentinels
    for i in range(k - 2, -1, -1):
        nxt = [current[0]]
        for left, right in zip(current, current[1:]):
            sb = left.sign_at_b(i)
            sc = right.sign_at_a(i)
            if sb * sc < 0:
                I = IsolatingInterval(left.b, right.a, sb, sc, left.cert_b, right.cert_a)
                J = refine(tower[i], tower, I, L)
                nxt.append(WeakInterval(J.a, J.b, J.cert_a, J.cert_b, i))
            nxt.append(right)
        current = nxt
    return WeakCovering(current[1:-1], L, a_star, b_star, tower)


def _refined(W, L):
    """Refine every interval of ``W`` to width ``< 2**-L``."""
    out = []
    for J in W.intervals:
        if J.width < Dyadic(1, -L):
            out.append(J)
            continue
        s_a, s_b = J.sign_at_a(J.level), J.sign_at_b(J.level)
        I = IsolatingInterval(J.a, J.b, s_a, s_b, J.cert_a, J.cert_b)
        R = refine(W.tower[J.level], W.tower, I, L)
        out.append(WeakInterval(R.a, R.b, R.cert_a, R.cert_b, J.level))
    return WeakCovering(out, L, W.a_star, W.b_star, W.tower)


def _violates(I, J, bound, lam):
    gap = J.a - I.b
    return gap < min(bound, I.width * lam) or gap < min(bound, J.width * lam)


def is_separated(intervals, L, lam):
    bound = Dyadic(1, -L)
    return not any(_violates(I, J, bound, lam) for I, J in zip(intervals, intervals[1:]))


def separate(W, L, lam):
    """Merge neighbours until the list is ``(L, lam)``-separated.

    Accepts a :class:`WeakCovering` or a sorted list of intervals and returns
    the same kind.  Merged intervals are hulls of their parts.
    """
    intervals = list(W.intervals if isinstance(W, WeakCovering) else W)
    bound = Dyadic(1, -L)
    lam = Dyadic.coerce(lam)
    changed = True
    while changed:
        changed = False
        out = []
        for J in intervals:
            if out and _violates(out[-1], J, bound, lam):
                I = out.pop()
                J = WeakInterval(I.a, J.b, I.cert_a, J.cert_b, None)
                changed = True
            out.append(J)
        intervals = out
    if isinstance(W, WeakCovering):
        return WeakCovering(intervals, W.L, W.a_star, W.b_star, W.tower)
    return intervals


def separated_weak_covering(f, L, lam, tower=None):
    """``(L, lam)``-separated weak covering with widths at most ``2**-L``.

    A first pass refines only ``log2(2 + lam) + 2`` bits beyond ``L``; when
    merging then produces an interval that is too wide, every interval is
    refined to ``L + m * ceil(log2(2 + lam))`` bits (``m`` intervals), after
    which merged widths are guaranteed to stay below ``2**-L``.
    """
    step = _ceil_log2(2 + int(lam))
    bound = Dyadic(1, -L)
    W = weak_covering(f, L + step + 2, tower)
    S = separate(W, L, lam)
    if all(J.width <= bound for J in S):
        return S
    W = _refined(W, L + max(1, len(W)) * step + 1)
    S = separate(W, L, lam)
    if not all(J.width <= bound for J in S):
        raise ContractViolation("merged interval wider than the target after full refinement")
    return S
