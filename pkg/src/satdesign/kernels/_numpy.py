"""Pure-numpy implementations of the hot integer kernels.

Same contracts and int64 order limit as the numba kernels; work is
vectorised over a batch axis instead of compiled loops.
"""

import numpy as np

_CHUNK = 1 << 14


def det_batch(mats):
    """Bareiss determinants of a stack of square integer matrices."""
    m = np.array(mats, dtype=np.int64, copy=True)
    if m.ndim != 3 or m.shape[1] != m.shape[2]:
        raise ValueError("expected a (batch, n, n) array")
    nb, n, _ = m.shape
    sign = np.ones(nb, dtype=np.int64)
    prev = np.ones(nb, dtype=np.int64)
    dead = np.zeros(nb, dtype=bool)
    for k in range(n - 1):
        zero = np.flatnonzero(m[:, k, k] == 0)
        if zero.size:
            below = m[zero, k + 1:, k] != 0
            has = below.any(axis=1)
            stuck = zero[~has]
            dead[stuck] = True
            # keep dead entries divisible-safe; their value is discarded
            m[stuck, k, k] = 1
            swap = zero[has]
            p = k + 1 + below[has].argmax(axis=1)
            rows_k = m[swap, k, :].copy()
            m[swap, k, :] = m[swap, p, :]
            m[swap, p, :] = rows_k
            sign[swap] = -sign[swap]
        piv = m[:, k, k].copy()
        col = m[:, k + 1:, k][:, :, None]
        row = m[:, k, k + 1:][:, None, :]
        with np.errstate(over="ignore"):
            num = m[:, k + 1:, k + 1:] * piv[:, None, None] - col * row
        m[:, k + 1:, k + 1:] = num // prev[:, None, None]
        prev = piv
    out = sign * m[:, n - 1, n - 1]
    out[dead] = 0
    return out


def det_int64(a):
    return int(det_batch(np.asarray(a)[None])[0])


def codes_to_matrices(codes, k):
    free = (k - 1) * (k - 1)
    bits = (codes[:, None] >> np.arange(free, dtype=np.int64)) & 1
    mats = np.ones((codes.size, k, k), dtype=np.int64)
    mats[:, 1:, 1:] = (1 - 2 * bits).reshape(codes.size, k - 1, k - 1)
    return mats


def scan_range(k, lo, hi):
    best, best_code = -1, -1
    for start in range(lo, hi, _CHUNK):
        codes = np.arange(start, min(start + _CHUNK, hi), dtype=np.int64)
        d = np.abs(det_batch(codes_to_matrices(codes, k)))
        i = int(d.argmax())
        if d[i] > best:
            best, best_code = int(d[i]), int(codes[i])
    return best, best_code


def scan_chunks(k, nchunks):
    total = 1 << ((k - 1) * (k - 1))
    step = total // nchunks
    best = np.empty(nchunks, dtype=np.int64)
    codes = np.empty(nchunks, dtype=np.int64)
    for c in range(nchunks):
        best[c], codes[c] = scan_range(k, c * step, (c + 1) * step)
    return best, codes


def hillclimb(start):
    a = np.array(start, dtype=np.int64, copy=True)
    k = a.shape[0]
    ii, jj = np.divmod(np.arange(k * (k - 1)), k - 1) if k > 1 else (np.empty(0, int),) * 2
    jj = jj + 1
    cur = abs(det_int64(a))
    pos = np.arange(ii.size)
    while ii.size:
        cand = np.repeat(a[None], ii.size, axis=0)
        cand[pos, ii, jj] *= -1
        d = np.abs(det_batch(cand))
        better = np.flatnonzero(d > cur)
        if better.size == 0:
            break
        p = better[0]
        a[ii[p], jj[p]] *= -1
        cur = int(d[p])
    return cur, a
