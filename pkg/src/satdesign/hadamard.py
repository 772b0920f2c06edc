"""Sylvester Hadamard matrices and an exact Hadamard test."""

import numpy as np

from .errors import NotSquare, OrderTooLarge
from .signmat import MAX_DET_ORDER, SignMatrix, as_sign_matrix


def sylvester(m: int) -> SignMatrix:
    """Order-2**m Hadamard matrix by repeated doubling [[H, H], [H, -H]].

    First row and first column are all +1.
    """
    if m < 0:
        raise ValueError("exponent must be non-negative")
    if 2**m > MAX_DET_ORDER:
        raise OrderTooLarge(f"order 2**{m} exceeds {MAX_DET_ORDER}")
    h = np.ones((1, 1), dtype=np.int8)
    for _ in range(m):
        h = np.block([[h, h], [h, -h]])
    return SignMatrix._wrap(h)


def is_hadamard(h) -> bool:
    """True iff H @ H.T == n I, evaluated in exact integers."""
    h = as_sign_matrix(h)
    if not h.is_square:
        raise NotSquare(f"expected a square matrix, got {h.shape}")
    a = h.array.astype(np.int64)
    n = h.rows
    return bool(np.array_equal(a @ a.T, n * np.eye(n, dtype=np.int64)))
