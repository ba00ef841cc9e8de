"""Pure-Python fixed-point kernels.

A fixed-point number ``X`` with ``K`` fractional bits stands for ``X / 2**K``.
Every product is truncated (floored) back to ``K`` fractional bits, so each
multiplication adds an absolute error below ``2**-K``.  The integer type is
whatever the caller passes in (``int`` or ``gmpy2.mpz``).
"""


def powers(C, K, exps):
    """Truncated powers ``C**e`` for every ``e`` in ``exps`` by binary powering.

    The table of repeated squares is shared between exponents; each power uses
    at most ``2*log2(e) + 1`` truncated multiplications.
    """
    if not exps:
        return []
    top = max(exps).bit_length()
    sq = [C]
    for _ in range(1, top):
        s = sq[-1]
        sq.append((s * s) >> K)
    one = (C * 0 + 1) << K
    cache = {}
    out = []
    for e in exps:
        p = cache.get(e)
        if p is None:
            acc = None
            j = 0
            ee = e
            while ee:
                if ee & 1:
                    acc = sq[j] if acc is None else (acc * sq[j]) >> K
                ee >>= 1
                j += 1
            p = one if acc is None else acc
            cache[e] = p
        out.append(p)
    return out


def sparse_eval(coeffs, exps, C, K):
    """Fixed-point value of ``sum(coeffs[i] * x**exps[i])`` at ``x = C``."""
    total = 0
    for F, P in zip(coeffs, powers(C, K, exps)):
        total += (F * P) >> K
    return total


def sparse_eval_many(polys, C, K):
    """Evaluate several sparse polynomials at one point, sharing powers.

    ``polys`` is a sequence of ``(coeffs, exps)`` pairs.
    """
    all_exps = sorted({e for _, exps in polys for e in exps})
    table = dict(zip(all_exps, powers(C, K, all_exps)))
    out = []
    for coeffs, exps in polys:
        total = 0
        for F, e in zip(coeffs, exps):
            total += (F * table[e]) >> K
        out.append(total)
    return out


def grid_eval(polys, points, K):
    """``sparse_eval_many(polys, C, K)`` for every ``C`` in ``points``."""
    all_exps = sorted({e for _, exps in polys for e in exps})
    where = {e: i for i, e in enumerate(all_exps)}
    idx = [[where[e] for e in exps] for _, exps in polys]
    out = []
    for C in points:
        pw = powers(C, K, all_exps)
        row = []
        for (coeffs, _), ix in zip(polys, idx):
            total = 0
            for c, j in zip(coeffs, ix):
                total += (c * pw[j]) >> K
            row.append(total)
        out.append(row)
    return out
