"""Maximal |det| over +-1 matrices whose first column is all +1.

Three sources, each tagged in the returned record:

* ``theta_exhaustive`` enumerates every matrix with first row and column
  fixed to +1 (column negations make fixing the first row free).
* ``theta_hillclimb`` runs seeded single-flip ascent; its value is only a
  lower bound on the true maximum.
* ``catalog_theta`` serves known optima: small orders from exhaustive search,
  order 15 from a known maximizer, order 16 from Sylvester's construction.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import NotInCatalog, NotInClass, OrderTooLarge
from .hadamard import sylvester
from .signmat import (
    MAX_DET_ORDER,
    SignMatrix,
    as_sign_matrix,
    bareiss_det,
    determinant_exact,
    first_column_all_ones,
    parse_glyph,
)

EXHAUSTIVE_MAX_ORDER = 6
DEFAULT_SEED = 24301
DEFAULT_RESTARTS = 8


class Provenance(str, enum.Enum):
    EXHAUSTIVE = "exhaustive"
    HEURISTIC = "heuristic-lower-bound"
    CATALOG = "catalog"


@dataclass(frozen=True)
class MaxDetRecord:
    order: int
    theta: int
    witness: SignMatrix
    provenance: Provenance

    def __post_init__(self):
        w = as_sign_matrix(self.witness)
        object.__setattr__(self, "witness", w)
        object.__setattr__(self, "provenance", Provenance(self.provenance))
        if w.shape != (self.order, self.order):
            raise NotInClass(f"witness shape {w.shape} does not match order {self.order}")
        if not first_column_all_ones(w):
            raise NotInClass("witness first column must be all +1")
        if abs(determinant_exact(w)) != self.theta:
            raise ValueError("theta does not equal |det(witness)|")

    @property
    def is_lower_bound(self) -> bool:
        return self.provenance is Provenance.HEURISTIC

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "theta": str(self.theta),
            "provenance": self.provenance.value,
            "witness": self.witness.to_glyph(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> MaxDetRecord:
        return cls(
            order=int(obj["order"]),
            theta=int(obj["theta"]),
            witness=parse_glyph(obj["witness"]),
            provenance=Provenance(obj["provenance"]),
        )


@functools.lru_cache(maxsize=None)
def theta_exhaustive(k: int) -> MaxDetRecord:
    """Exact maximum by enumerating all 2**((k-1)**2) normalized matrices.

    The witness is the first maximizer in enumeration order, where free entry
    (i, j), 1 <= i, j < k, is bit (i-1)(k-1) + (j-1) of the code and a set
    bit means -1.
    """
    if k < 1:
        raise ValueError("order must be >= 1")
    if k > EXHAUSTIVE_MAX_ORDER:
        raise OrderTooLarge(f"exhaustive search supports order <= {EXHAUSTIVE_MAX_ORDER}")
    best, code = kernels.exhaustive_scan(k)
    witness = SignMatrix(kernels.code_to_matrix(code, k))
    return MaxDetRecord(k, best, witness, Provenance.EXHAUSTIVE)


def _random_start(rng: np.random.Generator, k: int) -> np.ndarray:
    a = rng.choice(np.array([-1, 1], dtype=np.int64), size=(k, k))
    a[:, 0] = 1
    return a


def _hillclimb_bigint(start: np.ndarray) -> tuple[int, np.ndarray]:
    # same first-improvement rule as the kernels, for orders past int64 range
    a = start.astype(np.int64).copy()
    k = a.shape[0]
    cur = abs(bareiss_det(a.tolist()))
    improved = True
    while improved:
        improved = False
        for i in range(k):
            for j in range(1, k):
                a[i, j] = -a[i, j]
                d = abs(bareiss_det(a.tolist()))
                if d > cur:
                    cur, improved = d, True
                    break
                a[i, j] = -a[i, j]
            if improved:
                break
    return cur, a


def theta_hillclimb(k: int, restarts: int = DEFAULT_RESTARTS, seed: int = DEFAULT_SEED) -> MaxDetRecord:
    """Best |det| found by single-entry flip ascent from random starts.

    Restart ``r`` draws its start from child ``r`` of ``SeedSequence(seed)``,
    so the outcome is a pure function of ``(k, restarts, seed)``. Ties between
    restarts go to the lowest restart index. Orders above 16 use Python
    integers and are slow.
    """
    if k < 1:
        raise ValueError("order must be >= 1")
    if k > MAX_DET_ORDER:
        raise OrderTooLarge(f"order {k} exceeds {MAX_DET_ORDER}")
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    climb = kernels.hillclimb if k <= kernels.INT64_MAX_ORDER else _hillclimb_bigint
    best, best_a = -1, None
    for child in np.random.SeedSequence(seed).spawn(restarts):
        value, a = climb(_random_start(np.random.default_rng(child), k))
        if value > best:
            best, best_a = value, a
    return MaxDetRecord(k, best, SignMatrix(best_a), Provenance.HEURISTIC)


# Known maximal-determinant matrix of order 15; |det| = 25515 * 2**14.
M15_RAW = """
----+++++-++++-
---+-++-++++-++
---++-++-++-+++
-++--+++-++----
++-+--+++-+----
+-+-+-+-+++----
++++++-++++--+-
-++-----+-+-+++
+++---++++-++++
+-+----+--++-++
++-------+++++-
++--+++------++
+-++-++-----++-
-++++-+----+-+-
+++++++---+++-+
"""

# M15_RAW with rows negated so the first column is all +1.
M15_NORMALIZED = """
++++-----+----+
+++-+--+----+--
+++--+--+--+---
+--++---+--++++
++-+--+++-+----
+-+-+-+-+++----
++++++-++++--+-
+--+++++-+-+---
+++---++++-++++
+-+----+--++-++
++-------+++++-
++--+++------++
+-++-++-----++-
+----+-++++-+-+
+++++++---+++-+
"""

THETA_15 = 25515 * 2**14
THETA_16 = 16**8


def m15_raw() -> SignMatrix:
    return parse_glyph(M15_RAW)


def m15_normalized() -> SignMatrix:
    return parse_glyph(M15_NORMALIZED)


def catalog_orders() -> tuple[int, ...]:
    return tuple(range(1, EXHAUSTIVE_MAX_ORDER + 1)) + (15, 16)


@functools.lru_cache(maxsize=None)
def catalog_theta(k: int) -> MaxDetRecord:
    """Known maximum for a cataloged order; raises NotInCatalog otherwise."""
    if 1 <= k <= EXHAUSTIVE_MAX_ORDER:
        return theta_exhaustive(k)
    if k == 15:
        return MaxDetRecord(15, THETA_15, m15_normalized(), Provenance.CATALOG)
    if k == 16:
        return MaxDetRecord(16, THETA_16, sylvester(4), Provenance.CATALOG)
    raise NotInCatalog(f"no cataloged maximal determinant for order {k}; have {catalog_orders()}")
