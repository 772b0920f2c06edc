"""numba implementations of the hot integer kernels.

All arithmetic is int64. Callers must keep the matrix order at or below
``INT64_MAX_ORDER`` (see ``satdesign.kernels``): Bareiss intermediates are
products of two minors, bounded by 2 (n-1)^(n-1) for a +-1 matrix.
"""

import warnings

import numba as nb
import numpy as np

# an outdated system TBB is probed and rejected on every parallel launch
warnings.filterwarnings("ignore", message="The TBB threading layer")


@nb.njit(cache=True)
def det_inplace(m):
    """Bareiss determinant of a square int64 array; destroys ``m``."""
    n = m.shape[0]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k, k] == 0:
            p = -1
            for i in range(k + 1, n):
                if m[i, k] != 0:
                    p = i
                    break
            if p < 0:
                return 0
            for j in range(k, n):
                t = m[k, j]
                m[k, j] = m[p, j]
                m[p, j] = t
            sign = -sign
        piv = m[k, k]
        for i in range(k + 1, n):
            mik = m[i, k]
            for j in range(k + 1, n):
                m[i, j] = (m[i, j] * piv - mik * m[k, j]) // prev
        prev = piv
    return sign * m[n - 1, n - 1]


@nb.njit(cache=True)
def det_int64(a):
    return det_inplace(a.astype(np.int64))


@nb.njit(cache=True)
def det_batch(mats):
    out = np.empty(mats.shape[0], dtype=np.int64)
    work = np.empty(mats.shape[1:], dtype=np.int64)
    for b in range(mats.shape[0]):
        work[:, :] = mats[b]
        out[b] = det_inplace(work)
    return out


@nb.njit(cache=True)
def fill_from_code(code, m):
    # first row and column fixed to +1; bit set -> -1
    k = m.shape[0]
    for j in range(k):
        m[0, j] = 1
    for i in range(1, k):
        m[i, 0] = 1
        for j in range(1, k):
            bit = (code >> ((i - 1) * (k - 1) + (j - 1))) & 1
            m[i, j] = 1 - 2 * bit


@nb.njit(cache=True)
def scan_range(k, lo, hi):
    """Best |det| over codes in [lo, hi) and the first code reaching it."""
    m = np.empty((k, k), dtype=np.int64)
    best = -1
    best_code = -1
    for code in range(lo, hi):
        fill_from_code(code, m)
        d = abs(det_inplace(m))
        if d > best:
            best = d
            best_code = code
    return best, best_code


@nb.njit(cache=True, parallel=True)
def scan_chunks(k, nchunks):
    total = 1 << ((k - 1) * (k - 1))
    step = total // nchunks
    best = np.empty(nchunks, dtype=np.int64)
    codes = np.empty(nchunks, dtype=np.int64)
    for c in nb.prange(nchunks):
        b, bc = scan_range(k, c * step, (c + 1) * step)
        best[c] = b
        codes[c] = bc
    return best, codes


@nb.njit(cache=True)
def hillclimb(start):
    a = start.astype(np.int64)
    k = a.shape[0]
    work = a.copy()
    cur = abs(det_inplace(work))
    while True:
        improved = False
        for i in range(k):
            for j in range(1, k):
                a[i, j] = -a[i, j]
                work[:, :] = a
                d = abs(det_inplace(work))
                if d > cur:
                    cur = d
                    improved = True
                    break
                a[i, j] = -a[i, j]
            if improved:
                break
        if not improved:
            break
    return cur, a
