"""One test per acceptance criterion; each records a PASS/FAIL line shown in
the terminal summary."""

import itertools
import json
import time

import numpy as np
import pytest

from satdesign.bounds import classical_upper_bound, efficiency_report
from satdesign.cli import main
from satdesign.designs import (
    ModelSpec,
    RunMatrix,
    construct_g,
    construct_g1,
    construct_g_optimal,
    construct_gn,
    is_estimable,
)
from satdesign.errors import SingularResult
from satdesign.hadamard import is_hadamard, sylvester
from satdesign.maxdet import THETA_15, catalog_orders, catalog_theta, theta_exhaustive
from satdesign.signmat import determinant_exact

from oracles import cofactor_det, gn_singular_predictor, random_normalized, random_pm1

PCT_TOL = 0.01


def test_c1_theta5_exhaustive(criterion):
    theta_exhaustive.__wrapped__(2)  # load compiled kernels
    t = time.perf_counter()
    rec = theta_exhaustive.__wrapped__(5)
    dt = time.perf_counter() - t
    criterion(1, rec.theta == 48 and dt <= 1.0, f"Theta_5 = {rec.theta} (want 48) in {dt:.3f}s (limit 1s)")


def test_c2_m15_determinant(criterion, m15_known):
    d = determinant_exact(m15_known)
    criterion(2, abs(d) == 418037760 == 25515 * 2**14, f"det(known M15) = {d} (want +-418037760)")


def test_c3_g5(criterion):
    d = construct_g_optimal(5)
    r = efficiency_report("g", 5, abs(d.determinant))
    ok = (
        abs(d.determinant) == 73728
        and abs(r.pct_local - 100) <= PCT_TOL
        and abs(r.pct_global - 100) <= PCT_TOL
        and r.global_value.value == 18 * 2**12
    )
    criterion(3, ok, f"G(5,1) det = {d.determinant}, pct_local = {r.pct_local:.4f}, pct_global = {r.pct_global:.4f}")


def test_c4_g15(criterion):
    d = construct_g_optimal(15)
    r = efficiency_report("g", 15, abs(d.determinant))
    ok = (
        abs(d.determinant) == 2**15 * (25515 * 2**14) ** 2
        and abs(r.pct_local - 94.23) <= PCT_TOL
        and abs(r.pct_global - 54.23) <= PCT_TOL
        and r.global_value.value == 203 * 2**29 * 7**13
    )
    criterion(4, ok, f"G(15,1) |det| = 2^15*Theta15^2: {ok}, pct_local = {r.pct_local:.4f}, pct_global = {r.pct_global:.4f}")


def test_c5_g16(criterion):
    d = construct_g_optimal(16)
    r = efficiency_report("g", 16, abs(d.determinant))
    had = is_hadamard(d.matrix)
    ok = (
        abs(d.determinant) == 2**16 * 16**16 == 2**80
        and had
        and abs(r.pct_local - 100) <= PCT_TOL
        and abs(r.pct_global - 100) <= PCT_TOL
    )
    criterion(5, ok, f"G(16,1) |det| == 2^80: {abs(d.determinant) == 2**80}, hadamard: {had}, pct_local = {r.pct_local:.4f}, pct_global = {r.pct_global:.4f}")


def test_c6_g1_15(criterion, m15_plus):
    d = construct_g1(sylvester(4), m15_plus)
    r = efficiency_report("g1", 15, abs(d.determinant))
    ok = (
        abs(d.determinant) == 2**15 * 25515 * 2**14 * 16**8
        and abs(r.pct_local - 97.07) <= PCT_TOL
        and abs(r.pct_global - 72.13) <= PCT_TOL
        and r.global_value.value == 2**30 * 784 * 7**13
        and not r.global_value.proven
    )
    criterion(6, ok, f"G1(15,1) |det| = {abs(d.determinant)}, pct_local = {r.pct_local:.4f}, pct_global = {r.pct_global:.4f} (global unproven)")


def test_c7_sylvester_bit_identical(criterion, h16_known):
    h = sylvester(4)
    ok = h.array.dtype == h16_known.array.dtype and h.array.tobytes() == h16_known.array.tobytes()
    criterion(7, ok, "sylvester(4) bit-identical to the stored H16")


def test_c8_ehlich15(criterion):
    b = classical_upper_bound(15)
    c = b.constants
    ratio = THETA_15 / b.approx
    ok = (c.s, c.r, c.u, c.v) == (6, 2, 3, 3) and abs(ratio - 0.9707) <= 5e-4
    criterion(8, ok, f"(s,r,u,v) = {(c.s, c.r, c.u, c.v)}, Theta15/bound = {ratio:.5f} (want 0.9707 +- 0.0005)")


def test_c9a_block_identity(criterion):
    rng = np.random.default_rng(901)
    bad = 0
    for k in range(2, 7):
        for _ in range(200):
            M, N = random_normalized(rng, k), random_normalized(rng, k)
            d = construct_g(M, N)
            bad += d.determinant != 2**k * cofactor_det(M.tolist()) * cofactor_det(N.tolist())
    criterion("9a", bad == 0, f"det([M M; -N N]) = 2^k det M det N on 1000 pairs, k=2..6: {bad} mismatches")


def test_c9b_bareiss_vs_cofactor(criterion):
    rng = np.random.default_rng(902)
    bad = 0
    for _ in range(500):
        a = random_pm1(rng, int(rng.integers(1, 8)))
        bad += determinant_exact(a) != cofactor_det(a.tolist())
    criterion("9b", bad == 0, f"Bareiss vs cofactor on 500 random matrices of order <= 7: {bad} mismatches")


def test_c9c_signed_permutations(criterion):
    rng = np.random.default_rng(903)
    bad = 0
    for n in (3, 5, 7, 12, 20):
        a = random_pm1(rng, n)
        base = abs(determinant_exact(a))
        for _ in range(100):
            b = a[rng.permutation(n)][:, rng.permutation(n)]
            b = b * rng.choice([-1, 1], size=n)[:, None] * rng.choice([-1, 1], size=n)[None, :]
            bad += abs(determinant_exact(b)) != base
    criterion("9c", bad == 0, f"|det| invariant under 100 signed permutations x 5 test matrices: {bad} mismatches")


def test_c9d_unbalanced_singular(criterion):
    rng = np.random.default_rng(904)
    bad = 0
    for _ in range(100):
        k = int(rng.integers(1, 8))
        f_plus = int(rng.choice([f for f in range(2 * k + 1) if f != k]))
        levels = rng.choice([-1, 1], size=(2 * k, k))
        levels[:, 0] = np.where(np.arange(2 * k) < f_plus, 1, -1)
        bad += is_estimable(RunMatrix(levels[rng.permutation(2 * k)]), ModelSpec(k))
    criterion("9d", bad == 0, f"unbalanced pivot runs singular in 100 random cases: {bad} nonsingular")


def test_c9e_gn_sweep(criterion):
    total = singular = unexplained = 0
    for k, n in itertools.product((1, 2), (1, 2)):
        g = construct_g_optimal(k)
        M_n = catalog_theta(n).witness
        for gp in itertools.product(range(2 * k), repeat=n):
            for mp in itertools.product(range(n), repeat=2 * k):
                total += 1
                try:
                    d = construct_gn(g, M_n, gp, mp)
                    unexplained += d.determinant == 0
                except SingularResult as exc:
                    singular += 1
                    unexplained += not gn_singular_predictor(k, n, exc.g_row_picks, exc.m_row_picks)
    criterion(
        "9e",
        unexplained == 0,
        f"construct_gn sweep k,n <= 2: {total} cases, {total - singular} nonsingular, {singular} reported counterexamples",
    )


def _g1_sample():
    rng = np.random.default_rng(906)
    for _ in range(200):
        k = int(rng.integers(1, 6))
        yield k, random_normalized(rng, k + 1), random_normalized(rng, k)


def test_c9f_g1_identity(criterion):
    bad = 0
    for k, M, N in _g1_sample():
        d = construct_g1(M, N)
        bad += abs(d.determinant) != 2**k * abs(cofactor_det(M.tolist())) * abs(cofactor_det(N.tolist()))
    criterion("9f", bad == 0, f"G1 identity |det| = 2^k |det M_k+1| |det N_k| on 200 inputs, k <= 5: {bad} mismatches")


def test_c9g_g1_theta_bound(criterion):
    bad = 0
    for k, M, N in _g1_sample():
        d = construct_g1(M, N)
        bad += abs(d.determinant) > 2**k * catalog_theta(k).theta * catalog_theta(k + 1).theta
    criterion("9g", bad == 0, f"|det g1(k,1)| <= 2^k Theta_k Theta_k+1 on the same 200 inputs: {bad} violations")


def _cli(capsys, *argv):
    code = main(list(argv))
    out, _ = capsys.readouterr()
    return code, out


def test_c10_cli(criterion, tmp_path, capsys):
    runs = [("g", k, ()) for k in catalog_orders()]
    runs += [("g1", k, ()) for k in catalog_orders() if k + 1 in catalog_orders()]
    runs += [("gn", k, ("--g-picks", "0", "--m-picks", ",".join(["0"] * (2 * k)))) for k in catalog_orders()]
    runs += [("g2k", k, ()) for k in (4, 8)]
    failures = []
    for cls, k, extra in runs:
        path = tmp_path / f"{cls}{k}.txt"
        c1, _ = _cli(capsys, "construct", "--class", cls, "--k", str(k), "--out", str(path), *extra)
        c2, _ = _cli(capsys, "verify", str(path))
        if c1 or c2:
            failures.append(f"{cls}/{k}")
    code, out = _cli(capsys, "report", "--format", "json")
    cols = json.loads(out)
    want = [(10, 100, 100), (30, 94.23, 54.23), (32, 100, 100), (31, 97.07, 72.13)]
    cells_ok = sum(
        (c["order"] == o) + (abs(c["pct_local"] - pl) <= PCT_TOL) + (abs(c["pct_global"] - pg) <= PCT_TOL)
        for c, (o, pl, pg) in zip(cols, want)
    )
    ok = not failures and code == 0 and cells_ok == 12
    criterion(
        10,
        ok,
        f"construct->verify exit 0 for {len(runs) - len(failures)}/{len(runs)} (class, k) pairs; "
        f"report matches {cells_ok}/12 order and percentage cells",
    )
