"""Integer kernels behind the exact determinant engine and the searches.

Dispatches to numba or numpy according to ``satdesign._backend.BACKEND``.
Every kernel works in int64 and is only valid up to ``INT64_MAX_ORDER``;
the public wrappers here enforce that.
"""

import numpy as np

from .._backend import BACKEND
from ..errors import OrderTooLarge

if BACKEND == "numba":
    from . import _numba as _impl
else:
    from . import _numpy as _impl

# 2 * 15**15 < 2**63 bounds every Bareiss intermediate of a +-1 matrix of order 16
INT64_MAX_ORDER = 16


def _check_order(n):
    if n > INT64_MAX_ORDER:
        raise OrderTooLarge(f"int64 kernels support order <= {INT64_MAX_ORDER}, got {n}")


def det_int64(a) -> int:
    a = np.ascontiguousarray(a, dtype=np.int64)
    _check_order(a.shape[0])
    return int(_impl.det_int64(a))


def det_batch(mats) -> np.ndarray:
    mats = np.ascontiguousarray(mats, dtype=np.int64)
    _check_order(mats.shape[1])
    return _impl.det_batch(mats)


def exhaustive_scan(k: int, nchunks: int = 64) -> tuple[int, int]:
    """Max |det| over +-1 matrices with first row and column all +1.

    Returns ``(best, code)`` where ``code`` is the smallest enumeration code
    attaining ``best``; the result does not depend on ``nchunks``.
    """
    total = 1 << ((k - 1) * (k - 1))
    nchunks = max(1, min(nchunks, total))
    while total % nchunks:
        nchunks -= 1
    best, codes = _impl.scan_chunks(k, nchunks)
    c = int(np.argmax(best))
    return int(best[c]), int(codes[c])


def code_to_matrix(code: int, k: int) -> np.ndarray:
    free = (k - 1) * (k - 1)
    m = np.ones((k, k), dtype=np.int64)
    bits = (code >> np.arange(free, dtype=np.int64)) & 1
    m[1:, 1:] = (1 - 2 * bits).reshape(k - 1, k - 1)
    return m


def hillclimb(start) -> tuple[int, np.ndarray]:
    """First-improvement single-flip ascent on |det|, first column frozen."""
    start = np.ascontiguousarray(start, dtype=np.int64)
    _check_order(start.shape[0])
    best, a = _impl.hillclimb(start)
    return int(best), np.asarray(a)


__all__ = [
    "BACKEND",
    "INT64_MAX_ORDER",
    "code_to_matrix",
    "det_batch",
    "det_int64",
    "exhaustive_scan",
    "hillclimb",
]
