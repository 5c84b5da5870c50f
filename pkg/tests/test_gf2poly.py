"""Arithmetic in the GF(2) term algebra, checked against a naive expander."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubetoric.gf2poly import (
    Gf2Polynomial,
    Monomial,
    graded_component,
    mono_mul,
    mul_capped,
    poly_add,
    poly_mul,
    render_poly,
    substitute_linear,
)

NAMES = ("t1", "t2", "t3", "t4")


def mono(pairs, m=4):
    return Monomial.from_pairs(pairs, m)


def poly(*term_pairs, m=4):
    return Gf2Polynomial.from_monomials([mono(p, m) for p in term_pairs], m)


def gen(i, m=4):
    return Gf2Polynomial.generator(i, m)


one = Gf2Polynomial.one(4)
zero = Gf2Polynomial.zero(4)


# ---------------------------------------------------------------- oracle --
# Independent expander over dicts of exponent tuples; no package arithmetic.


def naive_add(p: dict, q: dict) -> dict:
    out = dict(p)
    for term in q:
        if term in out:
            del out[term]
        else:
            out[term] = None
    return out


def naive_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for a in p:
        for b in q:
            term = tuple(x + y for x, y in zip(a, b))
            if term in out:
                del out[term]
            else:
                out[term] = None
    return out


def as_dict(p: Gf2Polynomial) -> dict:
    return {tuple(int(e) for e in row): None for row in p.rows}


# ------------------------------------------------------------- monomials --


def test_mono_mul_adds_exponents():
    t1 = mono([(0, 1)])
    assert mono_mul(t1, t1) == mono([(0, 2)])
    assert mono_mul(Monomial.one(4), mono([(1, 1)])) == mono([(1, 1)])
    t1t2 = mono([(0, 1), (1, 1)])
    assert mono_mul(t1t2, mono([(1, 1)])) == mono([(0, 1), (1, 2)])


def test_monomial_degree_is_twice_weight():
    m = mono([(0, 2), (2, 1)])
    assert m.weight == 3
    assert m.degree == 6
    assert Monomial.one(4).degree == 0


def test_monomial_sparse_view_drops_zeros():
    m = mono([(0, 1), (2, 0), (3, 2)])
    assert m.pairs() == ((0, 1), (3, 2))
    assert m.exponents() == {0: 1, 3: 2}


def test_monomial_divides():
    assert mono([(0, 1)]).divides(mono([(0, 2), (1, 1)]))
    assert not mono([(1, 2)]).divides(mono([(1, 1)]))


# ----------------------------------------------------------------- addition --


def test_poly_add_cancels_mod_2():
    p = poly([(0, 1)], [(1, 1)])
    q = poly([(1, 1)], [(2, 1)])
    assert poly_add(p, q) == poly([(0, 1)], [(2, 1)])


def test_poly_add_is_involutive():
    p = poly([(0, 1)], [(1, 2)], [(0, 1), (2, 1)])
    assert poly_add(p, p) == zero
    assert poly_add(one, zero) == one


# ------------------------------------------------------------------ product --


def test_frobenius_square():
    p = poly_add(one, gen(0))
    assert poly_mul(p, p) == poly([], [(0, 2)])


def test_product_distributes_over_four_terms():
    p = poly_mul(poly_add(one, gen(0)), poly_add(one, gen(1)))
    assert p == poly([], [(0, 1)], [(1, 1)], [(0, 1), (1, 1)])


def test_three_factor_product_matches_naive_expander():
    factors = [
        poly([], [(0, 1)]),
        poly([], [(0, 1)], [(1, 1)]),
        poly([], [(0, 1)], [(1, 1)], [(2, 1)]),
    ]
    result = one
    expected = {(0, 0, 0, 0): None}
    for f in factors:
        result = poly_mul(result, f)
        expected = naive_mul(expected, as_dict(f))
    assert as_dict(result) == expected
    assert len(result) == len(expected)


def test_mul_capped_drops_high_degrees():
    p = poly_add(one, gen(0))
    q = poly_add(one, gen(1))
    capped = mul_capped(p, q, 2)
    assert capped == poly([], [(0, 1)], [(1, 1)])


# ------------------------------------------------------------- components --


def test_graded_component_examples():
    p = poly([], [(0, 1)], [(0, 1), (1, 1)])
    assert graded_component(p, 4) == poly([(0, 1), (1, 1)])
    assert graded_component(p, 8) == zero
    assert graded_component(p, 0) == one


def test_graded_component_rejects_odd_and_negative():
    with pytest.raises(ValueError):
        graded_component(one, 3)
    with pytest.raises(ValueError):
        graded_component(one, -2)


def test_components_partition_polynomial():
    p = poly([], [(0, 1)], [(1, 2)], [(0, 1), (1, 1), (2, 1)])
    acc = zero
    for d in p.degrees():
        acc = poly_add(acc, graded_component(p, d))
    assert acc == p


# ------------------------------------------------------------ canonical form --


def test_canonical_order_matches_printed_classes():
    # degree first, then grevlex with t1 < t2 < ...; mirrors the hand values
    p = poly([(1, 1), (3, 1)], [(0, 1), (2, 1)], [], [(0, 1), (3, 1)])
    assert render_poly(p, NAMES) == "1 + t1*t3 + t1*t4 + t2*t4"


def test_render_exponents_and_zero():
    assert render_poly(poly([(1, 2)]), NAMES) == "t2^2"
    assert render_poly(zero, NAMES) == "0"
    assert render_poly(one, NAMES) == "1"


def test_equal_polynomials_share_serialization():
    p = poly([(0, 1)], [(1, 1)])
    q = poly_add(poly([(1, 1)]), poly([(0, 1)]))
    assert p == q
    assert p.to_pairs() == q.to_pairs()
    assert hash(p) == hash(q)


def test_wide_rings_supported():
    wide = 40
    p = Gf2Polynomial.generator(0, wide)
    q = Gf2Polynomial.generator(wide - 1, wide)
    assert len(poly_mul(p, q)) == 1
    with pytest.raises(ValueError):
        Gf2Polynomial.one(65)


def test_exponent_overflow_is_rejected():
    big = Gf2Polynomial.from_monomials([Monomial.from_pairs([(0, 200)], 2)], 2)
    with pytest.raises(OverflowError):
        poly_mul(big, big)


def test_substitute_linear_triangular_change():
    # u1 -> t1, u2 -> t1 + t2 sends u2^2 + u1*u2 to t2^2 + t1*t2
    rel = poly([(1, 2)], [(0, 1), (1, 1)], m=2)
    images = [gen(0, 2), poly_add(gen(0, 2), gen(1, 2))]
    out = substitute_linear(rel, images, 2)
    assert out == poly([(1, 2)], [(0, 1), (1, 1)], m=2)


# ------------------------------------------------------------- properties --

monomials_st = st.lists(
    st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=0, max_size=4
).map(lambda pairs: Monomial.from_pairs(pairs, 4))

polys_st = st.lists(monomials_st, min_size=0, max_size=6).map(
    lambda ms: Gf2Polynomial.from_monomials(ms, 4)
)


@settings(max_examples=120, deadline=None)
@given(polys_st, polys_st, polys_st)
def test_addition_group_axioms(p, q, r):
    assert poly_add(poly_add(p, q), r) == poly_add(p, poly_add(q, r))
    assert poly_add(p, q) == poly_add(q, p)
    assert poly_add(p, p) == zero


@settings(max_examples=120, deadline=None)
@given(polys_st, polys_st, polys_st)
def test_multiplication_distributes(p, q, r):
    assert poly_mul(p, poly_add(q, r)) == poly_add(poly_mul(p, q), poly_mul(p, r))


@settings(max_examples=120, deadline=None)
@given(polys_st, polys_st)
def test_frobenius_property(p, q):
    s = poly_add(p, q)
    assert poly_mul(s, s) == poly_add(poly_mul(p, p), poly_mul(q, q))


@settings(max_examples=80, deadline=None)
@given(polys_st, polys_st)
def test_multiplication_matches_naive_expander(p, q):
    assert as_dict(poly_mul(p, q)) == naive_mul(as_dict(p), as_dict(q))
