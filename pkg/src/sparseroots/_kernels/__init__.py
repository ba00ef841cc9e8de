"""Fixed-point evaluation kernels.

The compiled extension ``_fixed`` is used when it was built; otherwise the
pure-Python module with the same functions is loaded.  Independently, big
integers are routed through ``gmpy2.mpz`` when gmpy2 is importable, which is
several times faster than ``int`` beyond a few hundred bits.

Set ``SPARSEROOTS_PURE_PYTHON=1`` to force the fallback for both choices.
"""

import os
from types import SimpleNamespace

_FORCE_PURE = os.environ.get("SPARSEROOTS_PURE_PYTHON", "") not in ("", "0")

from . import _fixed_py

if _FORCE_PURE:
    _impl = _fixed_py
else:
    try:
        from . import _fixed as _impl
    except ImportError:
        _impl = _fixed_py

try:
    if _FORCE_PURE:
        raise ImportError
    from gmpy2 import mpz as _big
except ImportError:
    _big = None

BACKEND = "compiled" if _impl is not _fixed_py else "python"
BIGINT = "gmpy2" if _big is not None else "int"


def _wrap(impl, big):
    """Namespace of kernels from ``impl`` running on the integer type ``big``."""
    if big is None:
        return SimpleNamespace(
            powers=impl.powers,
            sparse_eval=impl.sparse_eval,
            sparse_eval_many=impl.sparse_eval_many,
            grid_eval=impl.grid_eval,
        )

    def powers(C, K, exps):
        return [int(p) for p in impl.powers(big(C), K, exps)]

    def sparse_eval(coeffs, exps, C, K):
        return int(impl.sparse_eval([big(c) for c in coeffs], exps, big(C), K))

    def sparse_eval_many(polys, C, K):
        polys = [([big(c) for c in coeffs], exps) for coeffs, exps in polys]
        return [int(v) for v in impl.sparse_eval_many(polys, big(C), K)]

    def grid_eval(polys, points, K):
        polys = [([big(c) for c in coeffs], list(exps)) for coeffs, exps in polys]
        rows = impl.grid_eval(polys, [big(C) for C in points], K)
        return [[int(v) for v in row] for row in rows]

    return SimpleNamespace(
        powers=powers, sparse_eval=sparse_eval, sparse_eval_many=sparse_eval_many, grid_eval=grid_eval
    )


_active = _wrap(_impl, _big)
powers = _active.powers
sparse_eval = _active.sparse_eval
sparse_eval_many = _active.sparse_eval_many
grid_eval = _active.grid_eval


def backends():
    """All available kernel namespaces keyed by ``"<impl>/<integer type>"``."""
    out = {"python/int": _wrap(_fixed_py, None)}
    try:
        from gmpy2 import mpz
        out["python/gmpy2"] = _wrap(_fixed_py, mpz)
    except ImportError:
        mpz = None
    try:
        from . import _fixed
    except ImportError:
        return out
    out["compiled/int"] = _wrap(_fixed, None)
    if mpz is not None:
        out["compiled/gmpy2"] = _wrap(_fixed, mpz)
    return out
