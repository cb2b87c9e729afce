import random

import pytest
from hypothesis import given, settings, strategies as st

from hyperfocus.gf2m import (
    FieldError,
    has_quadratic_root,
    is_irreducible,
    make_ctx,
    min_poly,
    mult_subgroup,
    parse_header,
    poly_degree,
    poly_from_exponents,
    poly_mod,
    roots,
    solve_quadratic,
    trace,
)

QUINTIC = poly_from_exponents(5, 4, 3, 1, 0)


def test_default_moduli():
    assert make_ctx(1).modulus == 0b11
    assert make_ctx(5).modulus == 0b100101
    assert make_ctx(2, 0b111).q == 4


def test_default_modulus_is_smallest_irreducible():
    for m in range(1, 9):
        mod = make_ctx(m).modulus
        assert all(not is_irreducible(p) for p in range((1 << m) | 1, mod, 2))


def test_bad_moduli():
    with pytest.raises(FieldError):
        make_ctx(2, 0b101)  # (x+1)^2
    with pytest.raises(FieldError):
        make_ctx(3, 0b111)  # wrong degree
    with pytest.raises(FieldError):
        make_ctx(17)
    with pytest.raises(FieldError):
        make_ctx(0)


def test_gf4_omega_squared():
    c = make_ctx(2)
    assert c.mul(0b10, 0b10) == 0b11


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_field_axioms_exhaustive(m):
    c = make_ctx(m)
    E = list(c.elements())
    for a in E:
        assert c.add(a, a) == 0
        if a:
            assert c.mul(a, c.inv(a)) == 1
        for b in E:
            assert c.mul(a, b) == c.mul(b, a) == c.mul_slow(a, b)
            for d in E:
                assert c.mul(a, c.mul(b, d)) == c.mul(c.mul(a, b), d)
                assert c.mul(a, b ^ d) == c.mul(a, b) ^ c.mul(a, d)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 16), st.data())
def test_field_axioms_random(m, data):
    c = make_ctx(m)
    a, b, d = (data.draw(st.integers(0, c.q - 1)) for _ in range(3))
    assert c.mul(a, b) == c.mul_slow(a, b)
    assert c.mul(a, b ^ d) == c.mul(a, b) ^ c.mul(a, d)
    assert c.mul(c.mul(a, b), d) == c.mul(a, c.mul(b, d))
    if a:
        assert c.mul(a, c.inv(a)) == 1
        assert c.div(b, a) == c.mul(b, c.inv(a))
        assert c.pow(a, c.q - 1) == 1


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        make_ctx(3).inv(0)


def test_field_elements_and_mixed_contexts():
    c5, c4 = make_ctx(5), make_ctx(4)
    a = c5(7)
    assert (a + a).bits == 0
    assert (a * a.inv()).bits == 1
    assert (a ** 31).bits == 1
    with pytest.raises(FieldError):
        a + c4(3)
    with pytest.raises(FieldError):
        c4(16)


def test_trace_examples():
    c = make_ctx(5)
    assert c.trace(0) == 0
    assert c.trace(1) == 1
    rs = roots(QUINTIC, c)
    assert rs and all(trace(c(a)) == 1 for a in rs)


@pytest.mark.parametrize("m", range(1, 11))
def test_trace_linear_frobenius_balanced(m):
    c = make_ctx(m)
    T = [c.trace(x) for x in c.elements()]
    assert sum(1 for t in T if t == 0) == c.q // 2
    rng = random.Random(m)
    for _ in range(200):
        x, y = rng.randrange(c.q), rng.randrange(c.q)
        assert T[x ^ y] == T[x] ^ T[y]
        assert T[c.mul(x, x)] == T[x]


@pytest.mark.parametrize("m", range(1, 9))
def test_artin_schreier_root_iff_trace_zero(m):
    c = make_ctx(m)
    for a in c.elements():
        assert has_quadratic_root(c, 1, a) == (c.trace(a) == 0)


@pytest.mark.parametrize("m", range(1, 9))
def test_solve_quadratic_against_scan(m):
    c = make_ctx(m)
    rng = random.Random(m)
    pairs = [(b, d) for b in range(c.q) for d in range(c.q)] if m <= 4 else [
        (rng.randrange(c.q), rng.randrange(c.q)) for _ in range(400)
    ]
    for b, d in pairs:
        want = sorted(t for t in c.elements() if c.mul(t, t) ^ c.mul(b, t) ^ d == 0)
        assert solve_quadratic(c, b, d) == want


def test_irreducibility_examples():
    assert is_irreducible(0b111)
    assert not is_irreducible(0b101)
    assert is_irreducible(QUINTIC)


def test_irreducible_against_trial_division():
    for p in range(2, 1 << 9):
        d = poly_degree(p)
        has_factor = any(
            poly_mod(p, f) == 0 for f in range(2, 1 << (d // 2 + 1)) if 1 <= poly_degree(f) <= d // 2
        )
        assert is_irreducible(p) == (not has_factor), p


def test_roots_examples():
    assert roots(0b110, make_ctx(1)) == [0, 1]
    assert len(set(roots(QUINTIC, make_ctx(5)))) == 5
    assert roots(QUINTIC, make_ctx(4)) == []


def test_min_poly_examples():
    c = make_ctx(5)
    assert min_poly(c, 0) == 0b10
    assert min_poly(c, 1) == 0b11
    for a in roots(QUINTIC, c):
        assert min_poly(c, a) == QUINTIC


@pytest.mark.parametrize("m", [2, 3, 4, 6, 8])
def test_min_poly_properties(m):
    c = make_ctx(m)
    for a in c.elements():
        p = min_poly(c, a)
        assert c.eval_poly(p, a) == 0
        assert m % poly_degree(p) == 0
        assert is_irreducible(p)


def test_mult_subgroup():
    assert mult_subgroup(make_ctx(3), 1) == [1]
    c10 = make_ctx(10)
    H = mult_subgroup(c10, 11)
    assert len(H) == 11 and all(c10.pow(h, 11) == 1 for h in H)
    assert mult_subgroup(make_ctx(2), 3) == [1, 2, 3]
    with pytest.raises(FieldError):
        mult_subgroup(make_ctx(4), 7)


def test_header_round_trip():
    for m in (1, 5, 10, 16):
        c = make_ctx(m)
        assert parse_header(c.header()) == c
    assert make_ctx(5).header() == "field m=5 mod=25"
