"""Exact arithmetic and structural operations on {-1, +1} matrices.

``SignMatrix`` is the immutable carrier used everywhere else. Determinants
are computed by fraction-free (Bareiss) elimination: int64 kernels for
order <= 16, Python integers beyond, so no value is ever rounded.
"""

from __future__ import annotations

import csv
import io
from collections.abc import Iterable

import numpy as np

from . import kernels
from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    InvalidEntry,
    LengthMismatch,
    NotSquare,
    OrderTooLarge,
    ParseError,
)

MAX_DET_ORDER = 40


class SignMatrix:
    """Dense rectangular matrix with every entry exactly -1 or +1.

    Entries are held as a read-only int8 array in row-major order. Instances
    compare and hash by value.
    """

    __slots__ = ("_a",)

    def __init__(self, entries):
        if isinstance(entries, SignMatrix):
            self._a = entries._a
            return
        a = np.asarray(entries)
        if a.ndim != 2 or a.shape[0] == 0 or a.shape[1] == 0:
            raise DimensionMismatch(f"expected a non-empty 2-D matrix, got shape {a.shape}")
        if a.dtype.kind not in "iuf" or not np.isin(a, (-1, 1)).all():
            raise InvalidEntry("entries must be exactly -1 or +1")
        a = a.astype(np.int8)
        a.flags.writeable = False
        self._a = a

    @classmethod
    def _wrap(cls, a: np.ndarray) -> SignMatrix:
        # trusted constructor for arrays already known to be +-1
        out = object.__new__(cls)
        a = np.ascontiguousarray(a, dtype=np.int8)
        a.flags.writeable = False
        out._a = a
        return out

    @property
    def array(self) -> np.ndarray:
        """Read-only int8 view of the entries."""
        return self._a

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def T(self) -> SignMatrix:
        return SignMatrix._wrap(self._a.T)

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._a.copy() if copy else self._a
        return self._a.astype(dtype)

    def __neg__(self) -> SignMatrix:
        return SignMatrix._wrap(-self._a)

    def __getitem__(self, key):
        return self._a[key]

    def __eq__(self, other):
        if not isinstance(other, SignMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._a, other._a))

    def __hash__(self):
        return hash((self.shape, self._a.tobytes()))

    def __repr__(self):
        return f"SignMatrix({self.rows}x{self.cols})\n{self.to_glyph()}"

    def tolist(self) -> list[list[int]]:
        return self._a.astype(int).tolist()

    def to_glyph(self, spaced: bool = False) -> str:
        sep = " " if spaced else ""
        return "\n".join(sep.join("+" if x > 0 else "-" for x in row) for row in self._a)

    def to_csv(self) -> str:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(self.tolist())
        return buf.getvalue().rstrip("\n")

    @classmethod
    def from_glyph(cls, text: str) -> SignMatrix:
        return parse_glyph(text)

    @classmethod
    def from_csv(cls, text: str) -> SignMatrix:
        return parse_csv(text)


def as_sign_matrix(m) -> SignMatrix:
    return m if isinstance(m, SignMatrix) else SignMatrix(m)


def parse_glyph(text: str) -> SignMatrix:
    """Parse '+'/'-' text, one row per line; single spaces between glyphs allowed."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        if "  " in line:
            raise ParseError(f"line {lineno}: glyphs may be separated by single spaces only")
        glyphs = line.replace(" ", "")
        bad = set(glyphs) - {"+", "-"}
        if bad:
            raise ParseError(f"line {lineno}: unexpected characters {sorted(bad)}")
        rows.append([1 if g == "+" else -1 for g in glyphs])
    return _from_rows(rows)


def parse_csv(text: str) -> SignMatrix:
    rows = []
    for lineno, rec in enumerate(csv.reader(io.StringIO(text)), 1):
        if not rec or all(not c.strip() for c in rec):
            continue
        try:
            vals = [int(c.strip()) for c in rec]
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
        if any(v not in (-1, 1) for v in vals):
            raise ParseError(f"line {lineno}: entries must be 1 or -1")
        rows.append(vals)
    return _from_rows(rows)


def parse_matrix(text: str) -> SignMatrix:
    """Parse CSV if the text contains a comma, glyph text otherwise."""
    return parse_csv(text) if "," in text else parse_glyph(text)


def _from_rows(rows) -> SignMatrix:
    if not rows:
        raise ParseError("no matrix rows found")
    if len({len(r) for r in rows}) != 1:
        raise ParseError("rows have different lengths")
    return SignMatrix._wrap(np.array(rows, dtype=np.int8))


def bareiss_det(rows: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix in Python ints."""
    a = [list(map(int, r)) for r in rows]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for p in range(k + 1, n):
                if a[p][k] != 0:
                    a[k], a[p] = a[p], a[k]
                    sign = -sign
                    break
            else:
                return 0
        piv, rk = a[k][k], a[k]
        for i in range(k + 1, n):
            ri = a[i]
            mik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * piv - mik * rk[j]) // prev
        prev = piv
    return sign * a[n - 1][n - 1]


def determinant_exact(m) -> int:
    """Exact determinant of a square sign matrix of order <= 40."""
    m = as_sign_matrix(m)
    if not m.is_square:
        raise NotSquare(f"determinant needs a square matrix, got {m.shape}")
    n = m.rows
    if n > MAX_DET_ORDER:
        raise OrderTooLarge(f"order {n} exceeds {MAX_DET_ORDER}")
    if n <= kernels.INT64_MAX_ORDER:
        return kernels.det_int64(m.array)
    return bareiss_det(m.tolist())


def _as_pm1_vector(x) -> np.ndarray:
    v = np.asarray(x)
    if v.ndim != 1 or v.size == 0:
        raise DimensionMismatch("expected a non-empty 1-D column")
    if not np.isin(v, (-1, 1)).all():
        raise InvalidEntry("entries must be exactly -1 or +1")
    return v.astype(np.int8)


def schur_product(a, b) -> np.ndarray:
    """Elementwise product of two +-1 columns."""
    a, b = _as_pm1_vector(a), _as_pm1_vector(b)
    if a.size != b.size:
        raise LengthMismatch(f"lengths differ: {a.size} vs {b.size}")
    return a * b


def _index_set(indices: Iterable[int], bound: int, what: str) -> list[int]:
    idx = sorted({int(i) for i in indices})
    if idx and (idx[0] < 0 or idx[-1] >= bound):
        raise IndexOutOfRange(f"{what} index out of range 0..{bound - 1}: {idx}")
    return idx


def negate_rows(m, rows: Iterable[int]) -> SignMatrix:
    m = as_sign_matrix(m)
    idx = _index_set(rows, m.rows, "row")
    a = m.array.copy()
    a[idx, :] *= -1
    return SignMatrix._wrap(a)


def negate_cols(m, cols: Iterable[int]) -> SignMatrix:
    m = as_sign_matrix(m)
    idx = _index_set(cols, m.cols, "column")
    a = m.array.copy()
    a[:, idx] *= -1
    return SignMatrix._wrap(a)


def hblock(*blocks) -> SignMatrix:
    """Place blocks side by side; all must have the same row count."""
    ms = [as_sign_matrix(b) for b in blocks]
    if len({m.rows for m in ms}) != 1:
        raise DimensionMismatch(f"row counts differ: {[m.rows for m in ms]}")
    return SignMatrix._wrap(np.hstack([m.array for m in ms]))


def vblock(*blocks) -> SignMatrix:
    """Stack blocks vertically; all must have the same column count."""
    ms = [as_sign_matrix(b) for b in blocks]
    if len({m.cols for m in ms}) != 1:
        raise DimensionMismatch(f"column counts differ: {[m.cols for m in ms]}")
    return SignMatrix._wrap(np.vstack([m.array for m in ms]))


def first_column_all_ones(m) -> bool:
    m = as_sign_matrix(m)
    return bool((m.array[:, 0] == 1).all())


def is_balanced(col) -> bool:
    v = _as_pm1_vector(col)
    return int(v.sum()) == 0


def normalize_first_column(m) -> SignMatrix:
    """Negate every row whose first entry is -1; |det| is unchanged."""
    m = as_sign_matrix(m)
    return negate_rows(m, np.flatnonzero(m.array[:, 0] < 0))
