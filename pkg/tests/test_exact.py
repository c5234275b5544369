"""Exact arithmetic: cyclotomic numbers, mod-1 reduction, integer lattices."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from spinseven.exact import (
    Cyc,
    cyclotomic_polynomial,
    hcf,
    lcm,
    mod1,
    smith_normal_form,
    solve_turn_system,
    unit_from_turn,
)

turns = st.fractions(
    min_value=Fraction(-4), max_value=Fraction(4), max_denominator=24
)


def test_mod1_basics():
    assert mod1(Fraction(7, 2)) == Fraction(1, 2)
    assert mod1(Fraction(-1, 3)) == Fraction(2, 3)
    assert mod1(5) == 0


@given(turns)
def test_mod1_idempotent_and_in_range(t):
    r = mod1(t)
    assert 0 <= r < 1
    assert mod1(r) == r
    assert (t - r).denominator == 1  # differ by an integer


def test_hcf_lcm():
    assert hcf([12, 18, 30]) == 6
    assert hcf([7]) == 7
    assert lcm(4, 6) == 12


@given(turns, turns)
def test_units_multiply_by_adding_turns(s, t):
    assert Cyc.unit(s) * Cyc.unit(t) == Cyc.unit(mod1(s + t))


@given(turns)
def test_unit_conjugate_inverts(t):
    u = Cyc.unit(t)
    assert u * u.conjugate() == Cyc.rational(1)
    assert u.inverse() == u.conjugate()


def test_imaginary_unit():
    i = Cyc.imaginary_unit()
    assert i * i == Cyc.rational(-1)
    assert i == Cyc.unit(Fraction(1, 4))


def test_rational_value_detection():
    assert Cyc.rational(Fraction(3, 7)).rational_value() == Fraction(3, 7)
    # a primitive cube root of unity is not rational
    assert Cyc.unit(Fraction(1, 3)).rational_value() is None
    # but the sum of all three cube roots is (it's zero)
    z = Cyc.unit(Fraction(1, 3))
    assert (Cyc.rational(1) + z + z * z).rational_value() == 0


@given(turns, st.integers(min_value=1, max_value=5))
def test_unit_multiple_roundtrip(t, m):
    c = unit_from_turn(mod1(t), m)
    got = c.as_unit_multiple()
    assert got == (Fraction(m), mod1(t))


def test_nonunit_has_no_unit_form():
    # 1 + i has magnitude sqrt(2), which is not rational
    c = Cyc.rational(1) + Cyc.imaginary_unit()
    assert c.as_unit_multiple() is None


def test_cyclotomic_polynomial_small():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    # degree is Euler's totient
    assert len(cyclotomic_polynomial(12)) - 1 == 4
    assert len(cyclotomic_polynomial(15)) - 1 == 8


@given(st.integers(min_value=2, max_value=30))
def test_primitive_root_satisfies_its_polynomial(n):
    z = Cyc.unit(Fraction(1, n))
    poly = cyclotomic_polynomial(n)
    total = Cyc.zero()
    for k, a in enumerate(poly):
        total = total + z ** k * a
    assert total.is_zero()


@st.composite
def integer_matrices(draw):
    rows = draw(st.integers(min_value=1, max_value=4))
    cols = draw(st.integers(min_value=1, max_value=4))
    return [
        [draw(st.integers(min_value=-9, max_value=9)) for _ in range(cols)]
        for _ in range(rows)
    ]


def _det_sign_free_unimodular(mat):
    """|det| == 1, checked by fraction-free Gaussian elimination."""
    from fractions import Fraction as Q

    n = len(mat)
    a = [[Q(x) for x in row] for row in mat]
    det = Q(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return False
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return abs(det) == 1


@given(integer_matrices())
def test_smith_normal_form_shape(mat):
    m, n = len(mat), len(mat[0])
    u, d, v = smith_normal_form([row[:] for row in mat])
    # U*A*V == D, with U (m x m) and V (n x n) unimodular
    ua = [
        [sum(u[i][k] * mat[k][j] for k in range(m)) for j in range(n)]
        for i in range(m)
    ]
    uav = [
        [sum(ua[i][k] * v[k][j] for k in range(n)) for j in range(n)]
        for i in range(m)
    ]
    assert uav == d
    assert _det_sign_free_unimodular(u)
    assert _det_sign_free_unimodular(v)
    # diagonal with successive divisibility
    for i in range(m):
        for j in range(n):
            if i != j:
                assert d[i][j] == 0
    diag = [d[i][i] for i in range(min(m, n))]
    for a, b in zip(diag, diag[1:]):
        if a:
            assert b % a == 0
        else:
            assert b == 0


def test_turn_system_simple():
    # 2x = 1/2 (mod 1) has the two solutions 1/4, 3/4
    sol = solve_turn_system([([2], Fraction(1, 2))], 1)
    assert sol.status == "finite"
    assert sorted(s[0] for s in sol.solutions) == [Fraction(1, 4), Fraction(3, 4)]


def test_turn_system_inconsistent_vs_free():
    none = solve_turn_system(
        [([2], Fraction(1, 2)), ([2], Fraction(1, 3))], 1
    )
    assert none.status == "empty"
    free = solve_turn_system([([0], Fraction(0))], 1)
    assert free.status == "infinite"


def test_turn_system_two_variables():
    # x + y = 1/2, x - y = 0 (mod 1): x = y and 2x = 1/2
    sol = solve_turn_system(
        [([1, 1], Fraction(1, 2)), ([1, -1], Fraction(0))], 2
    )
    assert sol.status == "finite"
    assert sol.solutions == [
        (Fraction(1, 4), Fraction(1, 4)),
        (Fraction(3, 4), Fraction(3, 4)),
    ]


def test_cyc_is_hashable_and_orders_insensitively():
    a = Cyc.unit(Fraction(1, 6)) + Cyc.unit(Fraction(1, 2))
    b = Cyc.unit(Fraction(1, 2)) + Cyc.unit(Fraction(1, 6))
    assert a == b
    assert hash(a) == hash(b)


def test_division_by_zero_rejected():
    with pytest.raises(ZeroDivisionError):
        Cyc.rational(1) / Cyc.zero()
