from fractions import Fraction

import pytest

from satdesign.bounds import (
    GLOBAL_MAXDET,
    classical_upper_bound,
    efficiency_report,
    ehlich_constants,
    format_table,
    local_bound_g,
    local_bound_g1,
)
from satdesign.errors import WrongResidue
from satdesign.hadamard import sylvester
from satdesign.maxdet import THETA_15, catalog_orders, catalog_theta
from satdesign.signmat import determinant_exact


def ehlich_sq(n, s, r, u, v):
    # the n = 3 (mod 4) expression under the square root, written out directly
    head = Fraction(1) if n == 3 else Fraction(n - 3) ** (n - s)
    return (
        head
        * Fraction(n - 3 + 4 * r) ** u
        * Fraction(n + 1 + 4 * r) ** v
        * (1 - Fraction(u * r, n - 3 + 4 * r) - Fraction(v * (r + 1), n + 1 + 4 * r))
    )


@pytest.mark.parametrize(
    "n, expected",
    [(3, (3, 1, 3, 0)), (7, (5, 1, 3, 2)), (11, (6, 1, 1, 5)), (15, (6, 2, 3, 3)), (59, (6, 9, 1, 5)), (63, (7, 9, 7, 0)), (79, (7, 11, 5, 2))],
)
def test_ehlich_constants(n, expected):
    c = ehlich_constants(n)
    assert (c.s, c.r, c.u, c.v) == expected
    assert c.u + c.v == c.s and c.r * c.s + c.v == n and c.u >= 0 and c.v >= 0


def test_ehlich_wrong_residue():
    for n in (1, 2, 4, 5, 6, 8, 13):
        with pytest.raises(WrongResidue):
            ehlich_constants(n)


def test_ehlich_bracket_in_unit_interval():
    for n in range(3, 81, 4):
        c = ehlich_constants(n)
        bracket = 1 - Fraction(c.u * c.r, n - 3 + 4 * c.r) - Fraction(c.v * (c.r + 1), n + 1 + 4 * c.r)
        assert 0 < bracket <= 1


def test_classical_examples():
    assert classical_upper_bound(1).exact == 1
    assert classical_upper_bound(2).exact == 2
    assert classical_upper_bound(4).exact == 16
    assert classical_upper_bound(10).exact == 18 * 8**4 == 18 * 2**12
    assert classical_upper_bound(30).exact == 203 * 2**29 * 7**13
    assert classical_upper_bound(32).exact == 2**80
    assert classical_upper_bound(5).exact == 48
    assert classical_upper_bound(3).exact == 4


def test_classical_n15():
    b = classical_upper_bound(15)
    assert b.square == Fraction(12**9 * 20**3 * 24**3) * (1 - Fraction(6, 20) - Fraction(9, 24))
    assert b.exact is None
    assert b.approx == pytest.approx(4.30646e8, rel=1e-5)
    assert b.constants.s == 6


def test_classical_domain():
    with pytest.raises(ValueError):
        classical_upper_bound(0)
    with pytest.raises(ValueError):
        classical_upper_bound(81)
    assert classical_upper_bound(80).exact == 80**40


def test_exact_and_approx_agree():
    for n in range(1, 81):
        b = classical_upper_bound(n)
        if b.exact is not None:
            assert b.exact**2 == b.square
            assert b.approx == float(b.exact)
        assert b.case == n % 4


def test_bound_dominates_catalog():
    for k in catalog_orders():
        assert catalog_theta(k).theta <= classical_upper_bound(k).approx * (1 + 1e-12)
    for n in (1, 2, 4, 5, 16):
        assert catalog_theta(n).theta == classical_upper_bound(n).exact
    assert abs(determinant_exact(sylvester(3))) == classical_upper_bound(8).exact


def test_local_bound_g_examples():
    assert local_bound_g(16).exact == 2**16 * 16**16
    assert local_bound_g(5).exact == 2**5 * 48**2 == 73728
    assert local_bound_g(1).exact == 2


def test_local_bound_g1_examples():
    assert local_bound_g1(4).exact == 2**4 * 256 * 3
    assert local_bound_g1(1).exact == 4
    b = local_bound_g1(15)
    assert b.square == 4**15 * classical_upper_bound(15).square * 16**16


def test_tables_by_residue():
    # case-by-case table expressions, squared, with the full n = 2 (mod 4) exponent
    F = Fraction
    k = 4
    assert local_bound_g(k).square == F(2**k * k**k) ** 2
    assert local_bound_g1(k).square == F(2**k * k**k) ** 2 * (2 * k + 1)
    k = 5
    assert local_bound_g(k).square == F(2**k * (k - 1) ** (k - 1) * (2 * k - 1)) ** 2
    assert local_bound_g1(k).square == (
        F(2**k * 2 * k) ** 2 * F(k - 1) ** (k - 1) * F(k - 1) ** (k - 1) * (2 * k - 1)
    )
    k = 6
    assert local_bound_g(k).square == F(2**k * (2 * k - 2) ** 2 * (k - 2) ** (k - 2)) ** 2
    c = ehlich_constants(k + 1)
    assert c == ehlich_constants(7)
    sqrt_part = (
        F(k - 2) ** (k + 1 - c.s)
        * F(k - 2 + 4 * c.r) ** c.u
        * F(k + 2 + 4 * c.r) ** c.v
        * (1 - F(c.u * c.r, k - 2 + 4 * c.r) - F(c.v * (c.r + 1), k + 2 + 4 * c.r))
    )
    assert classical_upper_bound(k + 1).square == sqrt_part
    assert local_bound_g1(k).square == F(2**k * (2 * k - 2)) ** 2 * F(k - 2) ** (k - 2) * sqrt_part
    k = 7
    c = ehlich_constants(k)
    e = ehlich_sq(k, c.s, c.r, c.u, c.v)
    assert local_bound_g(k).square == F(2**k) ** 2 * e**2
    assert local_bound_g1(k).square == F(2**k) ** 2 * F(k + 1) ** (k + 1) * e


def test_printed_k2_form_is_violated():
    # the abbreviated (k-2)^2 form is beaten by an exhibited design
    assert 2**6 * catalog_theta(6).theta ** 2 > 2**6 * 10**2 * 4**2
    assert 2**6 * catalog_theta(6).theta ** 2 <= local_bound_g(6).exact


def test_theta15_ratio():
    assert THETA_15 / classical_upper_bound(15).approx == pytest.approx(0.9707, abs=5e-4)


def test_efficiency_reports():
    r = efficiency_report("g", 5, 73728)
    assert r.pct_local == pytest.approx(100.0, abs=1e-9)
    assert r.pct_global == pytest.approx(100.0, abs=1e-9)
    r = efficiency_report("g", 15, 2**15 * THETA_15**2)
    assert r.pct_local == pytest.approx(94.23, abs=0.01)
    assert r.pct_global == pytest.approx(54.23, abs=0.01)
    r1 = efficiency_report("g1", 15, 2**15 * THETA_15 * 16**8)
    assert r1.pct_local == pytest.approx(97.07, abs=0.01)
    assert r1.pct_global == pytest.approx(72.13, abs=0.01)
    assert not r1.global_value.proven
    assert r1.pct_local == pytest.approx(100 * (r.pct_local / 100) ** 0.5, abs=0.01)
    assert efficiency_report("g", 7, 2**7 * 576).pct_global is None


def test_efficiency_errors():
    with pytest.raises(ValueError):
        efficiency_report("g", 5, 0)
    with pytest.raises(ValueError):
        efficiency_report("gn", 5, 10)


def test_global_table():
    assert set(GLOBAL_MAXDET) == {10, 30, 31, 32}
    assert GLOBAL_MAXDET[32].value == 2**31 * 16 * 8**15
    assert [GLOBAL_MAXDET[n].proven for n in (10, 30, 31, 32)] == [True, True, False, True]


def test_json_and_table():
    r = efficiency_report("g1", 15, 2**15 * THETA_15 * 16**8)
    j = r.to_json()
    assert j["attained"] == str(2**15 * THETA_15 * 16**8)
    assert j["global"]["proven"] is False
    text = format_table([r])
    assert "97.07" in text and "72.13" in text and "(unproven)" in text
