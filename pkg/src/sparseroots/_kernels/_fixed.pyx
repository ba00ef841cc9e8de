# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled fixed-point kernels; same contract as ``_fixed_py``."""


def powers(C, Py_ssize_t K, exps):
    cdef Py_ssize_t top, j, n
    cdef object s, acc, p, one, ee
    cdef list sq, out
    cdef dict cache
    if not exps:
        return []
    top = max(exps).bit_length()
    sq = [C]
    for j in range(1, top):
        s = sq[j - 1]
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
                    if acc is None:
                        acc = sq[j]
                    else:
                        acc = (acc * sq[j]) >> K
                ee >>= 1
                j += 1
            p = one if acc is None else acc
            cache[e] = p
        out.append(p)
    return out


def sparse_eval(coeffs, exps, C, Py_ssize_t K):
    cdef object total = 0
    cdef list pw = powers(C, K, exps)
    cdef Py_ssize_t i
    for i in range(len(pw)):
        total += (coeffs[i] * pw[i]) >> K
    return total


def sparse_eval_many(polys, C, Py_ssize_t K):
    cdef set es = set()
    cdef list all_exps, out
    cdef dict table
    cdef object total
    cdef Py_ssize_t i
    for _, exps in polys:
        es.update(exps)
    all_exps = sorted(es)
    table = dict(zip(all_exps, powers(C, K, all_exps)))
    out = []
    for coeffs, exps in polys:
        total = 0
        for i in range(len(exps)):
            total += (coeffs[i] * table[exps[i]]) >> K
        out.append(total)
    return out


def grid_eval(polys, points, Py_ssize_t K):
    cdef list all_exps, idx, out, row, pw, coeffs, ix
    cdef dict where
    cdef object total, C
    cdef Py_ssize_t i, p
    all_exps = sorted({e for _, exps in polys for e in exps})
    where = {e: i for i, e in enumerate(all_exps)}
    idx = [[where[e] for e in exps] for _, exps in polys]
    out = []
    for C in points:
        pw = powers(C, K, all_exps)
        row = []
        for p in range(len(polys)):
            coeffs = polys[p][0]
            ix = idx[p]
            total = 0
            for i in range(len(ix)):
                total += (coeffs[i] * pw[<Py_ssize_t>ix[i]]) >> K
            row.append(total)
        out.append(row)
    return out
