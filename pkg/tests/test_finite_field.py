import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvezeta.errors import CtxMismatch, DivisionByZero, InvalidPrimePower
from curvezeta.finite_field import (
    FieldCtx,
    PrimePower,
    element_arithmetic,
    enumerate_elements,
    field,
    find_irreducible,
    log_tables,
    poly_gcd,
    poly_powmod,
    poly_sub,
    solve_in_field,
)

SMALL_FIELDS = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 2)]


def test_prime_power_factorization():
    assert PrimePower.of(8) == PrimePower(2, 3)
    assert PrimePower.of(3125).p == 5 and PrimePower.of(3125).e == 5
    assert PrimePower.of(7).q == 7
    assert PrimePower.of(8).power(3).q == 512


@pytest.mark.parametrize("bad", [0, 1, 6, 12, 100, -4])
def test_prime_power_rejects(bad):
    with pytest.raises(InvalidPrimePower):
        PrimePower.of(bad)


def test_find_irreducible_examples():
    assert find_irreducible(2, 2) == (1, 1, 1)  # x^2 + x + 1
    assert find_irreducible(2, 3) == (1, 1, 0, 1)  # x^3 + x + 1
    assert find_irreducible(5, 1) == (0, 1)  # x


@pytest.mark.parametrize("p,n", [(2, k) for k in range(1, 9)] + [(3, k) for k in range(1, 6)] + [(5, 3), (5, 4), (7, 3)])
def test_find_irreducible_rabin(p, n):
    """gcd(x^(p^k) - x, m) = 1 for k < n, and x^(p^n) = x mod m."""
    m = find_irreducible(p, n)
    x = (0, 1)
    for k in range(1, n):
        frob = poly_powmod(x, p**k, m, p)
        assert poly_gcd(poly_sub(frob, x, p), m, p) == (1,)
    assert poly_sub(poly_powmod(x, p**n, m, p), x, p) == () or n == 1


def test_modulus_must_be_irreducible():
    with pytest.raises(ValueError):
        FieldCtx(2, 2, (1, 0, 1))


def test_alpha_squared_in_f4():
    F4 = field(2, 2)
    a = F4.gen
    assert a * a == a + 1


def test_beta_cubed_in_f8():
    F8 = field(2, 3)
    b = F8.gen
    assert b**3 == b + 1


def test_add_zero_is_identity():
    for p, n in SMALL_FIELDS:
        ctx = field(p, n)
        for a in enumerate_elements(ctx):
            assert a + ctx.zero == a


def test_element_arithmetic_dispatch():
    F8 = field(2, 3)
    b = F8.gen
    assert element_arithmetic(b, b, "mul") == b * b
    assert element_arithmetic(b, b, "div") == F8.one
    assert element_arithmetic(b, b, "sub") == F8.zero
    with pytest.raises(DivisionByZero):
        element_arithmetic(b, F8.zero, "div")
    with pytest.raises(CtxMismatch):
        element_arithmetic(b, field(2, 2).gen, "add")


def test_enumerate_order():
    assert [e.coeffs for e in enumerate_elements(field(2, 1))] == [(0,), (1,)]
    F4 = field(2, 2)
    a = F4.gen
    assert list(enumerate_elements(F4)) == [F4.zero, F4.one, a, a + 1]
    assert len(list(enumerate_elements(field(2, 3)))) == 8


@pytest.mark.parametrize("p,n", SMALL_FIELDS + [(2, 6), (3, 4)])
def test_lagrange(p, n):
    ctx = field(p, n)
    elems = list(enumerate_elements(ctx))
    assert len(set(elems)) == p**n
    for a in elems[1:]:
        assert a ** (p**n - 1) == ctx.one
        assert a * a.inverse() == ctx.one


def test_lagrange_large():
    ctx = field(2, 13)
    step = 97  # sample; the log-table build below is exhaustive
    for i in range(1, ctx.order, step):
        assert ctx.from_index(i) ** (ctx.order - 1) == ctx.one


def test_solve_in_field():
    F8 = field(2, 3)
    b = F8.gen
    assert solve_in_field([1, 1, 0, 1], F8) == {b, b**2, b**4}
    assert solve_in_field([1, 0, 1], field(2, 1)) == {field(2, 1).one}
    assert solve_in_field([1, 1, 1], field(2, 1)) == set()


def _elements(p, n):
    return st.lists(st.integers(0, p - 1), min_size=n, max_size=n).map(lambda cs: field(p, n)(cs))


@pytest.mark.parametrize("p,n", [(2, 5), (3, 3), (5, 2), (7, 2), (11, 1)])
def test_field_axioms(p, n):
    el = _elements(p, n)

    @settings(max_examples=150, deadline=None)
    @given(el, el, el)
    def check(a, b, c):
        assert a + b == b + a and a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a - b) + b == a
        if not b.is_zero():
            assert (a / b) * b == a

    check()


@pytest.mark.parametrize("p,n", [(2, 4), (3, 3), (5, 2), (2, 13)])
def test_log_tables_are_consistent(p, n):
    ctx = field(p, n)
    t = log_tables(ctx)
    assert sorted(t.exp_index.tolist()) == list(range(1, ctx.order))
    g = t.generator
    for k in (0, 1, 2, t.m - 1, t.m // 2):
        assert t.element(k) == g**k
        assert t.log(g**k) == k


@pytest.mark.parametrize("p,n", [(2, 3), (3, 2), (5, 2), (7, 1)])
def test_packed_addition_matches_field(p, n):
    ctx = field(p, n)
    t = log_tables(ctx)
    elems = list(enumerate_elements(ctx))
    logs = np.array([t.log(e) for e in elems])
    vals = t.packed[logs]  # zero maps to the all-zero encoding
    for a, va in zip(elems, vals):
        total = t.add_packed(np.full(len(vals), va), vals)
        for b, vt in zip(elems, total):
            s = a + b
            expected = 0 if s.is_zero() else t.packed[t.log(s)]
            assert vt == expected
