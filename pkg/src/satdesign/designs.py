"""Saturated two-level designs for a pivot factor interacting with all others.

Parameter order is fixed throughout as
``[F1..Fk, F0, F1.2..F1.k, Fe1..Fen]``: main effects, the mean (which equals
the pivot column times itself), the pivot interactions, then any extra main
effects. With the pivot placed first and its +1 runs on top, every
nonsingular design for ``n = 0`` has the block form ``[[M, M], [-N, N]]``.
"""

from __future__ import annotations

import enum
import json
import logging
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    NoHadamardWitness,
    NotInClass,
    NotSquare,
    OrderTooLarge,
    ParseError,
    SingularMatrix,
    SingularResult,
    SpecMismatch,
    WrongResidue,
)
from .hadamard import is_hadamard, sylvester
from .maxdet import catalog_theta
from .signmat import (
    MAX_DET_ORDER,
    SignMatrix,
    as_sign_matrix,
    determinant_exact,
    first_column_all_ones,
    hblock,
    negate_cols,
    parse_csv,
    parse_glyph,
    vblock,
)

log = logging.getLogger(__name__)


class DesignClass(str, enum.Enum):
    G = "g"
    G1 = "g1"
    GN = "gn"
    G2K = "g2k"


@dataclass(frozen=True)
class ModelSpec:
    """Mean, ``k`` main effects, pivot interactions and ``n_extra`` extra mains.

    The pivot is always factor 1.
    """

    k: int
    n_extra: int = 0

    def __post_init__(self):
        if self.k < 1 or self.n_extra < 0:
            raise SpecMismatch(f"need k >= 1 and n_extra >= 0, got k={self.k}, n_extra={self.n_extra}")

    @property
    def pivot(self) -> int:
        return 1

    @property
    def n_params(self) -> int:
        return 2 * self.k + self.n_extra

    @property
    def mean_index(self) -> int:
        return self.k

    @property
    def beta_order(self) -> tuple[str, ...]:
        k = self.k
        return (
            tuple(f"F{i}" for i in range(1, k + 1))
            + ("F0",)
            + tuple(f"F1.{j}" for j in range(2, k + 1))
            + tuple(f"Fe{i}" for i in range(1, self.n_extra + 1))
        )


@dataclass(frozen=True)
class RunMatrix:
    """Runs x factors at levels +-1, with one column designated as pivot."""

    levels: SignMatrix
    labels: tuple[str, ...] | None = None
    pivot: int = 0

    def __post_init__(self):
        object.__setattr__(self, "levels", as_sign_matrix(self.levels))
        if not 0 <= self.pivot < self.levels.cols:
            raise IndexOutOfRange(f"pivot column {self.pivot} out of range")
        if self.labels is not None and len(self.labels) != self.levels.cols:
            raise SpecMismatch("one label per factor column required")

    @classmethod
    def from_binary(cls, runs, labels=None, pivot: int = 0) -> RunMatrix:
        """Build from 0/1 level codes: 1 maps to +1 and 0 to -1."""
        a = np.asarray(runs)
        if not np.isin(a, (0, 1)).all():
            raise ParseError("binary runs must contain only 0 and 1")
        return cls(SignMatrix(2 * a.astype(np.int8) - 1), labels, pivot)

    @property
    def pivot_column(self) -> np.ndarray:
        return self.levels.array[:, self.pivot]

    @property
    def f_plus(self) -> int:
        return int((self.pivot_column > 0).sum())

    @property
    def f_minus(self) -> int:
        return int((self.pivot_column < 0).sum())


def model_matrix(runs: RunMatrix, spec: ModelSpec) -> SignMatrix:
    """Expand runs into model columns in ``spec.beta_order``.

    The pivot plays F1, the next ``k - 1`` non-pivot columns play F2..Fk and
    the following ``n_extra`` columns the extra main effects.
    """
    lv = runs.levels.array
    need = spec.k + spec.n_extra
    if lv.shape[1] < need:
        raise SpecMismatch(f"model needs {need} factor columns, runs have {lv.shape[1]}")
    others = [c for c in range(lv.shape[1]) if c != runs.pivot]
    mains = [runs.pivot] + others[: spec.k - 1]
    extras = others[spec.k - 1 : spec.k - 1 + spec.n_extra]
    piv = lv[:, runs.pivot]
    cols = (
        [lv[:, c] for c in mains]
        + [piv * piv]
        + [piv * lv[:, c] for c in mains[1:]]
        + [lv[:, c] for c in extras]
    )
    return SignMatrix._wrap(np.column_stack(cols))


def is_estimable(runs: RunMatrix, spec: ModelSpec) -> bool:
    """True iff the saturated model matrix is nonsingular."""
    mm = model_matrix(runs, spec)
    if not mm.is_square:
        raise NotSquare(f"{mm.rows} runs for {mm.cols} parameters is not saturated")
    return determinant_exact(mm) != 0


@dataclass(frozen=True)
class VerificationReport:
    class_tag: DesignClass
    predicates: dict[str, bool]
    determinant: int | None = None

    @property
    def passed(self) -> bool:
        return all(self.predicates.values())

    @property
    def failed(self) -> list[str]:
        return [name for name, ok in self.predicates.items() if not ok]

    def lines(self) -> list[str]:
        return [f"{'PASS' if ok else 'FAIL'} {name}" for name, ok in self.predicates.items()]


def _expected_extra(class_tag: DesignClass, spec: ModelSpec) -> int:
    if class_tag is DesignClass.G:
        return 0
    if class_tag is DesignClass.G1:
        return 1
    if class_tag is DesignClass.G2K:
        return 2 * spec.k
    return spec.n_extra


def verify_membership(d, class_tag, spec: ModelSpec) -> VerificationReport:
    """Check the structural predicates of a design in normal form.

    Predicates: ``shape``; ``pivot-balance`` (k of each sign among the first
    2k pivot entries); ``pivot-form`` (those entries read [1_k; -1_k]);
    ``mean-column``; ``interaction-columns`` (F1.j == F1 * Fj on every
    row); for bordered classes ``border-rows`` (each extra run reads
    [r, r] or [-r, r] with r[0] = +1); ``nonsingular``.
    """
    d = as_sign_matrix(d)
    class_tag = DesignClass(class_tag)
    k = spec.k
    preds: dict[str, bool] = {}
    n_extra = _expected_extra(class_tag, spec)
    order = 2 * k + n_extra
    preds["shape"] = d.shape == (order, order) and spec.n_extra == n_extra
    if not preds["shape"]:
        return VerificationReport(class_tag, preds)
    a = d.array.astype(np.int64)
    piv = a[:, 0]
    preds["pivot-balance"] = int(piv[: 2 * k].sum()) == 0
    preds["pivot-form"] = bool((piv[:k] == 1).all() and (piv[k : 2 * k] == -1).all())
    preds["mean-column"] = bool((a[:, k] == 1).all())
    inter = a[:, k + 1 : 2 * k] == piv[:, None] * a[:, 1:k]
    preds["interaction-columns"] = bool(inter.all())
    if class_tag is not DesignClass.G:
        border = a[2 * k :, : 2 * k]
        left, right = border[:, :k], border[:, k:]
        shaped = (left == right).all(axis=1) | (-left == right).all(axis=1)
        preds["border-rows"] = bool(shaped.all() and (right[:, 0] == 1).all())
    det = determinant_exact(d)
    preds["nonsingular"] = det != 0
    return VerificationReport(class_tag, preds, det)


@dataclass(frozen=True)
class SaturatedDesign:
    """A verified nonsingular design matrix with its model and class.

    ``determinant`` is always recomputed from ``matrix``; it is never taken
    from the caller.
    """

    matrix: SignMatrix
    spec: ModelSpec
    class_tag: DesignClass
    provenance: dict = field(default_factory=dict, compare=False)
    determinant: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "matrix", as_sign_matrix(self.matrix))
        object.__setattr__(self, "class_tag", DesignClass(self.class_tag))
        report = verify_membership(self.matrix, self.class_tag, self.spec)
        if report.predicates.get("nonsingular") is False:
            raise SingularMatrix("design matrix is singular")
        if not report.passed:
            raise NotInClass(f"not a {self.class_tag.value} design: failed {report.failed}")
        object.__setattr__(self, "determinant", report.determinant)

    @property
    def order(self) -> int:
        return self.matrix.rows

    @property
    def beta_order(self) -> tuple[str, ...]:
        return self.spec.beta_order

    def header(self) -> dict:
        return {
            "class_tag": self.class_tag.value,
            "k": self.spec.k,
            "n_extra": self.spec.n_extra,
            "beta": list(self.beta_order),
            "determinant": str(self.determinant),
        }

    def to_text(self, fmt: str = "glyph") -> str:
        """Serialize as a JSON header line followed by glyph or CSV rows, or as one JSON object."""
        if fmt == "json":
            return json.dumps({**self.header(), "matrix": self.matrix.tolist()})
        body = {"glyph": self.matrix.to_glyph, "csv": self.matrix.to_csv}.get(fmt)
        if body is None:
            raise ValueError(f"unknown format {fmt!r}")
        return json.dumps(self.header()) + "\n" + body() + "\n"


@dataclass(frozen=True)
class DesignFile:
    """A parsed design file; the header determinant is a claim, not a fact."""

    matrix: SignMatrix
    class_tag: DesignClass
    spec: ModelSpec
    header_determinant: int | None

    def verify(self) -> VerificationReport:
        return verify_membership(self.matrix, self.class_tag, self.spec)

    def to_design(self) -> SaturatedDesign:
        return SaturatedDesign(self.matrix, self.spec, self.class_tag)


def parse_design_text(text: str) -> DesignFile:
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty design file")
    first, _, rest = stripped.partition("\n")
    try:
        header = json.loads(first)
        if "matrix" in header:
            matrix = SignMatrix(header["matrix"])
        elif "," in rest:
            matrix = parse_csv(rest)
        else:
            matrix = parse_glyph(rest)
    except json.JSONDecodeError:
        # whole-file JSON spread over several lines
        try:
            header = json.loads(stripped)
            matrix = SignMatrix(header["matrix"])
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"not a design file: {exc}") from None
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad matrix: {exc}") from None
    if not isinstance(header, dict):
        raise ParseError("design header must be a JSON object")
    try:
        class_tag = DesignClass(header["class_tag"])
        spec = ModelSpec(int(header["k"]), int(header.get("n_extra", 0)))
        det = header.get("determinant")
        det = None if det is None else int(det)
    except (KeyError, ValueError, TypeError) as exc:
        raise ParseError(f"bad design header: {exc}") from None
    beta = header.get("beta")
    if beta is not None and tuple(beta) != spec.beta_order:
        raise ParseError("header beta labels do not match k and n_extra")
    return DesignFile(matrix, class_tag, spec, det)


def _require_member(m: SignMatrix, order: int, name: str):
    if not m.is_square or m.rows != order:
        raise NotInClass(f"{name} must be square of order {order}, got {m.shape}")
    if not first_column_all_ones(m):
        raise NotInClass(f"{name} must have first column all +1")
    det = determinant_exact(m)
    if det == 0:
        raise SingularMatrix(f"{name} is singular")
    return det


def construct_g(M, N, source: str | None = None) -> SaturatedDesign:
    """Assemble ``[[M, M], [-N, N]]`` from two nonsingular order-k matrices.

    ``det = 2**k det(M) det(N)``; the identity is checked against the exact
    determinant of the assembled matrix.
    """
    M, N = as_sign_matrix(M), as_sign_matrix(N)
    k = M.rows
    det_m = _require_member(M, k, "M")
    det_n = _require_member(N, k, "N")
    prov = {"construction": "[[M, M], [-N, N]]", "det_M": str(det_m), "det_N": str(det_n)}
    if source:
        prov["source"] = source
    design = SaturatedDesign(vblock(hblock(M, M), hblock(-N, N)), ModelSpec(k), DesignClass.G, prov)
    if design.determinant != 2**k * det_m * det_n:
        raise ArithmeticError("block determinant identity violated")
    return design


def construct_g_optimal(k: int) -> SaturatedDesign:
    """D-optimal member of G(k,1): both blocks set to a cataloged maximizer."""
    rec = catalog_theta(k)
    design = construct_g(rec.witness, rec.witness, source=f"maxdet order {k} ({rec.provenance.value})")
    if abs(design.determinant) != 2**k * rec.theta**2:
        raise ArithmeticError("optimal determinant identity violated")
    return design


def construct_gn(
    g: SaturatedDesign,
    M_n,
    g_row_picks: Sequence[int],
    m_row_picks: Sequence[int],
) -> SaturatedDesign:
    """Border a G(k,1) design with n extra main effects.

    Builds ``[[g, -V], [G, M_n]]`` where row i of ``G`` is row
    ``g_row_picks[i]`` of ``g`` and row i of ``V`` is row ``m_row_picks[i]``
    of ``M_n``. Nonsingularity is not assumed: the assembled matrix is
    checked exactly and ``SingularResult`` names the picks that failed.
    """
    if g.class_tag is not DesignClass.G:
        raise NotInClass("g must be a G(k,1) design")
    M_n = as_sign_matrix(M_n)
    n, k = M_n.rows, g.spec.k
    _require_member(M_n, n, "M_n")
    g_row_picks, m_row_picks = list(g_row_picks), list(m_row_picks)
    if len(g_row_picks) != n:
        raise DimensionMismatch(f"need {n} picks from g, got {len(g_row_picks)}")
    if len(m_row_picks) != 2 * k:
        raise DimensionMismatch(f"need {2 * k} picks from M_n, got {len(m_row_picks)}")
    if any(not 0 <= i < 2 * k for i in g_row_picks):
        raise IndexOutOfRange(f"g row picks must lie in 0..{2 * k - 1}")
    if any(not 0 <= i < n for i in m_row_picks):
        raise IndexOutOfRange(f"M_n row picks must lie in 0..{n - 1}")
    G = SignMatrix._wrap(g.matrix.array[g_row_picks])
    V = SignMatrix._wrap(M_n.array[m_row_picks])
    D = vblock(hblock(g.matrix, -V), hblock(G, M_n))
    prov = {
        "construction": "[[g, -V], [G, M_n]]",
        "g_row_picks": g_row_picks,
        "m_row_picks": m_row_picks,
    }
    try:
        return SaturatedDesign(D, ModelSpec(k, n), DesignClass.GN, prov)
    except SingularMatrix:
        log.warning("singular bordered design: k=%d n=%d g_row_picks=%s m_row_picks=%s",
                    k, n, g_row_picks, m_row_picks)
        raise SingularResult(
            f"assembled design is singular for g_row_picks={g_row_picks}, m_row_picks={m_row_picks}",
            g_row_picks,
            m_row_picks,
        ) from None


def construct_g2k_optimal(k: int) -> SaturatedDesign:
    """``[[g*, -g*], [g*, g*]]`` from a Hadamard-based optimum g* of G(k,1).

    The result is a Hadamard matrix of order 4k. Only Sylvester witnesses
    are available, so k must be a power of two; the exact determinant caps
    the order at 40.
    """
    if k < 4 or k % 4:
        raise WrongResidue(f"k must be a positive multiple of 4, got {k}")
    if 4 * k > MAX_DET_ORDER:
        raise OrderTooLarge(f"design order {4 * k} exceeds {MAX_DET_ORDER}")
    if k & (k - 1):
        raise NoHadamardWitness(f"no Hadamard matrix of order {k} available")
    h = sylvester(k.bit_length() - 1)
    g = construct_g(h, h, source=f"sylvester order {k}").matrix
    D = vblock(hblock(g, -g), hblock(g, g))
    if not is_hadamard(D):
        raise ArithmeticError("doubled design is not Hadamard")
    prov = {"construction": "[[g*, -g*], [g*, g*]]", "source": f"sylvester order {k}"}
    return SaturatedDesign(D, ModelSpec(k, 2 * k), DesignClass.G2K, prov)


def split_bordered(M_kp1) -> tuple[SignMatrix, np.ndarray, np.ndarray]:
    """Normalize the corner to +1, then split into ``[[M_k, -c0], [r0, 1]]``.

    Returns ``(M_k, c0, r0)``.
    """
    M = as_sign_matrix(M_kp1)
    k = M.rows - 1
    if M.array[k, k] < 0:
        M = negate_cols(M, [k])
    a = M.array
    return SignMatrix._wrap(a[:k, :k]), -a[:k, k].astype(np.int8), a[k, :k].copy()


def assemble_bordered(M_k, c0, r0) -> SignMatrix:
    M_k = as_sign_matrix(M_k)
    c0 = np.asarray(c0, dtype=np.int8)
    r0 = np.asarray(r0, dtype=np.int8)
    top = np.hstack([M_k.array, -c0[:, None]])
    bottom = np.append(r0, np.int8(1))[None, :]
    return SignMatrix(np.vstack([top, bottom]))


def construct_g1(M_kp1, N_k) -> SaturatedDesign:
    """Member of G1(k,1) from orders k+1 and k, with det = 2**k det(M_kp1') det(N_k).

    ``M_kp1'`` is ``M_kp1`` after its last column is negated if needed to
    put +1 in the corner. The border row is ``[r0, r0, 1]`` and the border
    column ``[-c0; -c0; 1]``.
    """
    M, N = as_sign_matrix(M_kp1), as_sign_matrix(N_k)
    k = N.rows
    if k < 1:
        raise NotInClass("k must be >= 1")
    _require_member(M, k + 1, "M_kp1")
    det_n = _require_member(N, k, "N_k")
    M_k, c0, r0 = split_bordered(M)
    det_m = determinant_exact(assemble_bordered(M_k, c0, r0))
    col = SignMatrix._wrap(-c0[:, None])
    top = hblock(M_k, M_k, col)
    mid = hblock(-N, N, col)
    bottom = SignMatrix._wrap(np.concatenate([r0, r0, [1]]).astype(np.int8)[None, :])
    prov = {
        "construction": "[[M_k, M_k, -c0], [-N, N, -c0], [r0, r0, 1]]",
        "det_M_kp1": str(det_m),
        "det_N_k": str(det_n),
    }
    design = SaturatedDesign(vblock(top, mid, bottom), ModelSpec(k, 1), DesignClass.G1, prov)
    if design.determinant != 2**k * det_m * det_n:
        raise ArithmeticError("bordered determinant identity violated")
    return design


def construct_g1_optimal(k: int) -> SaturatedDesign:
    """D-optimal member of G1(k,1) from cataloged maximizers of orders k+1 and k."""
    big, small = catalog_theta(k + 1), catalog_theta(k)
    design = construct_g1(big.witness, small.witness)
    if abs(design.determinant) != 2**k * big.theta * small.theta:
        raise ArithmeticError("optimal determinant identity violated")
    return design
