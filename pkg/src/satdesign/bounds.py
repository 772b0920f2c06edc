"""Upper bounds on |det| of +-1 matrices and of the structured design classes.

Every bound is stored through the exact rational square of its value, so
root-bearing cases (order 1 and 3 mod 4) lose nothing until a decimal is
requested. Percentages are formed from exact ratios and a single square root
taken at 50 significant digits.
"""

from __future__ import annotations

import decimal
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import WrongResidue

MAX_BOUND_ORDER = 80
_PREC = 50


def _dec_sqrt(x: Fraction) -> decimal.Decimal:
    with decimal.localcontext() as ctx:
        ctx.prec = _PREC
        return (decimal.Decimal(x.numerator) / decimal.Decimal(x.denominator)).sqrt()


def _dec(x: Fraction) -> decimal.Decimal:
    with decimal.localcontext() as ctx:
        ctx.prec = _PREC
        return decimal.Decimal(x.numerator) / decimal.Decimal(x.denominator)


@dataclass(frozen=True)
class EhlichConstants:
    s: int
    r: int
    u: int
    v: int

    def to_json(self) -> dict:
        return {"s": self.s, "r": self.r, "u": self.u, "v": self.v}


@dataclass(frozen=True)
class BoundValue:
    """A bound known through the exact square of its value.

    ``exact`` is the integer value when the square is a perfect square,
    ``approx`` a float rendering, ``case`` the residue mod 4 that selected
    the formula.
    """

    square: Fraction
    case: int
    order: int
    constants: EhlichConstants | None = None

    @property
    def exact(self) -> int | None:
        if self.square.denominator != 1:
            return None
        n = self.square.numerator
        r = math.isqrt(n)
        return r if r * r == n else None

    @property
    def decimal(self) -> decimal.Decimal:
        return _dec_sqrt(self.square)

    @property
    def approx(self) -> float:
        e = self.exact
        return float(e) if e is not None else float(self.decimal)

    def __str__(self):
        e = self.exact
        if e is not None:
            return str(e)
        return format(self.decimal, ".12f")

    def to_json(self) -> dict:
        e = self.exact
        out = {
            "order": self.order,
            "case_mod4": self.case,
            "exact": None if e is None else str(e),
            "value": str(self),
            "square": str(self.square),
        }
        if self.constants is not None:
            out["ehlich"] = self.constants.to_json()
        return out


def ehlich_constants(n: int) -> EhlichConstants:
    """Block constants of the Ehlich bound for n = 3 (mod 4)."""
    if n < 3 or n % 4 != 3:
        raise WrongResidue(f"Ehlich constants need n = 3 (mod 4), n >= 3; got {n}")
    if n == 3:
        s = 3
    elif n == 7:
        s = 5
    elif n <= 59:
        s = 6
    else:
        s = 7
    r = n // s
    v = n - r * s
    return EhlichConstants(s=s, r=r, u=s - v, v=v)


def _ehlich_square(n: int, c: EhlichConstants) -> Fraction:
    a = n - 3 + 4 * c.r
    b = n + 1 + 4 * c.r
    # for n = 3, (n-3)**(n-s) = 0**0 = 1
    head = Fraction(n - 3) ** (n - c.s)
    tail = 1 - Fraction(c.u * c.r, a) - Fraction(c.v * (c.r + 1), b)
    return head * Fraction(a) ** c.u * Fraction(b) ** c.v * tail


def classical_upper_bound(n: int) -> BoundValue:
    """Hadamard / Ehlich-Wojtas / Ehlich-Barba / Ehlich bound for order n.

    The 2 (mod 4) case uses the full form (2n-2)(n-2)**((n-2)/2).
    """
    if not 1 <= n <= MAX_BOUND_ORDER:
        raise ValueError(f"order must be in 1..{MAX_BOUND_ORDER}, got {n}")
    case = n % 4
    constants = None
    if n <= 2 or case == 0:
        square = Fraction(n**n)
    elif case == 2:
        square = Fraction((2 * n - 2) ** 2 * (n - 2) ** (n - 2))
    elif case == 1:
        square = Fraction((n - 1) ** (n - 1) * (2 * n - 1))
    else:
        constants = ehlich_constants(n)
        square = _ehlich_square(n, constants)
    return BoundValue(square, case, n, constants)


def local_bound_g(k: int) -> BoundValue:
    """2**k * UB(k)**2 for designs with mean, k main effects and pivot interactions."""
    if k < 1:
        raise ValueError("k must be >= 1")
    ub = classical_upper_bound(k)
    return BoundValue(Fraction(4**k) * ub.square**2, k % 4, 2 * k, ub.constants)


def local_bound_g1(k: int) -> BoundValue:
    """2**k * UB(k) * UB(k+1) for the same model plus one extra main effect."""
    if k < 1:
        raise ValueError("k must be >= 1")
    ub_k, ub_k1 = classical_upper_bound(k), classical_upper_bound(k + 1)
    constants = ub_k.constants or ub_k1.constants
    return BoundValue(Fraction(4**k) * ub_k.square * ub_k1.square, k % 4, 2 * k + 1, constants)


@dataclass(frozen=True)
class GlobalValue:
    """Best known |det| over all +-1 matrices of one order."""

    order: int
    value: int
    proven: bool


GLOBAL_MAXDET: dict[int, GlobalValue] = {
    10: GlobalValue(10, 18 * 2**12, True),
    30: GlobalValue(30, 203 * 2**29 * 7**13, True),
    # found by search, optimality open
    31: GlobalValue(31, 2**30 * 784 * 7**13, False),
    32: GlobalValue(32, 2**80, True),
}

CLASS_LABELS = {"g": "G(k,1)", "g1": "G1(k,1)"}


@dataclass(frozen=True)
class BoundReport:
    design_class: str
    k: int
    order: int
    attained: int
    local_bound: BoundValue
    pct_local: float
    global_value: GlobalValue | None = None
    pct_global: float | None = None

    @property
    def label(self) -> str:
        return CLASS_LABELS[self.design_class].replace("k", str(self.k))

    def to_json(self) -> dict:
        return {
            "class": self.design_class,
            "label": self.label,
            "k": self.k,
            "order": self.order,
            "attained": str(self.attained),
            "local_bound": self.local_bound.to_json(),
            "pct_local": round(self.pct_local, 6),
            "global": None
            if self.global_value is None
            else {"value": str(self.global_value.value), "proven": self.global_value.proven},
            "pct_global": None if self.pct_global is None else round(self.pct_global, 6),
        }


def efficiency_report(design_class: str, k: int, attained: int) -> BoundReport:
    """Score an attained |det| against the local bound and any known global value."""
    if attained <= 0:
        raise ValueError("attained determinant must be positive")
    if design_class == "g":
        local = local_bound_g(k)
    elif design_class == "g1":
        local = local_bound_g1(k)
    else:
        raise ValueError(f"efficiency is defined for classes 'g' and 'g1', got {design_class!r}")
    with decimal.localcontext() as ctx:
        ctx.prec = _PREC
        pct_local = float(100 * _dec_sqrt(Fraction(attained) ** 2 / local.square))
    glob = GLOBAL_MAXDET.get(local.order)
    pct_global = None
    if glob is not None:
        pct_global = float(100 * _dec(Fraction(attained, glob.value)))
    return BoundReport(design_class, k, local.order, attained, local, pct_local, glob, pct_global)


def format_table(reports: list[BoundReport]) -> str:
    """Plain-text comparison table, one column per report."""

    def pct(x):
        return "-" if x is None else f"{x:.2f}"

    def glob(r):
        if r.global_value is None:
            return "-"
        return str(r.global_value.value) + ("" if r.global_value.proven else " (unproven)")

    rows = [
        ("Set of saturated design matrices", [r.label for r in reports]),
        ("p (order of the matrices)", [str(r.order) for r in reports]),
        ("Local maximal determinants", [str(r.attained) for r in reports]),
        ("% of local upper bounds attained", [pct(r.pct_local) for r in reports]),
        ("Global maximal determinants of order p", [glob(r) for r in reports]),
        ("% of global determinants attained", [pct(r.pct_global) for r in reports]),
    ]
    head = max(len(name) for name, _ in rows)
    widths = [max(len(cells[i]) for _, cells in rows) for i in range(len(reports))]
    lines = []
    for name, cells in rows:
        lines.append("  ".join([name.ljust(head)] + [c.rjust(w) for c, w in zip(cells, widths)]))
    return "\n".join(lines)
