"""Groebner engine: completion, normal forms, standard bases, inversion."""

import itertools

import pytest

from cubetoric.errors import ReductionGuardError
from cubetoric.gf2poly import Gf2Polynomial, Monomial, poly_mul, render_poly
from cubetoric.quotient import (
    GroebnerBasis,
    RelationSet,
    buchberger,
    make_ring,
    normal_form,
    normal_form_random_path,
    series_inverse,
    standard_monomials,
)


def gen(i, m):
    return Gf2Polynomial.generator(i, m)


def mono(pairs, m):
    return Monomial.from_pairs(pairs, m)


def cube_t_relations(n):
    """t1^2 and t_i^2 + t_(i-1) t_i: the neighbour-cancellation relations."""
    ts = [gen(i, n) for i in range(n)]
    rels = [poly_mul(ts[0], ts[0])]
    rels += [poly_mul(ts[i], ts[i]) + poly_mul(ts[i - 1], ts[i]) for i in range(1, n)]
    return RelationSet(rels, n)


@pytest.fixture(scope="module")
def t3():
    rels = cube_t_relations(3)
    return rels, buchberger(rels)


# ------------------------------------------------------------- buchberger --


def test_single_monomial_generator_is_its_own_basis():
    rels = RelationSet([poly_mul(gen(0, 2), gen(0, 2))], 2)
    gb = buchberger(rels)
    assert [render_poly(g, ("t1", "t2")) for g in gb.elements] == ["t1^2"]


def test_linear_elimination():
    rels = RelationSet([gen(0, 2), gen(0, 2) + gen(1, 2)], 2)
    gb = buchberger(rels)
    assert set(gb.elements) == {gen(0, 2), gen(1, 2)}


def test_cube_relations_already_reduced(t3):
    rels, gb = t3
    assert set(gb.elements) == set(rels.generators)


def test_basis_is_reduced(t3):
    _, gb = t3
    leads = gb.leading_monomials
    for i, g in enumerate(gb.elements):
        for mono_ in g.terms():
            for j, lead in enumerate(leads):
                if i == j and mono_ == lead:
                    continue
                assert not lead.divides(mono_)


def test_spolys_reduce_to_zero(t3):
    _, gb = t3
    gb.check_spolys()  # raises on failure


def test_standard_monomials_of_cube_ring_are_squarefree(t3):
    # derived check: reduce every monomial of degree <= 6 exhaustively
    _, gb = t3
    for exps in itertools.product(range(4), repeat=3):
        if sum(exps) > 3:
            continue
        p = Gf2Polynomial.from_monomials(
            [mono([(i, e) for i, e in enumerate(exps) if e], 3)], 3
        )
        fixed = normal_form(p, gb) == p
        squarefree = all(e <= 1 for e in exps)
        assert fixed == squarefree
    basis = standard_monomials(gb, 6)
    assert basis.total == 8
    assert all(
        all(e <= 1 for _, e in m.pairs()) for monos in basis.by_degree.values() for m in monos
    )


def test_pair_guard_signals_defect():
    m = 3
    rels = RelationSet(
        [
            poly_mul(gen(0, m), gen(1, m)) + poly_mul(gen(2, m), gen(2, m)),
            poly_mul(gen(1, m), gen(1, m)) + poly_mul(gen(0, m), gen(2, m)),
        ],
        m,
    )
    with pytest.raises(ReductionGuardError):
        buchberger(rels, pair_guard=0)


def test_heterogeneous_relation_rejected():
    with pytest.raises(ValueError):
        RelationSet([Gf2Polynomial.one(2) + gen(0, 2)], 2)


# ------------------------------------------------------------ normal form --


def test_square_rewrites_to_neighbour_product(t3):
    _, gb = t3
    t = [gen(i, 3) for i in range(3)]
    assert normal_form(poly_mul(t[1], t[1]), gb) == poly_mul(t[0], t[1])


def test_power_collapse(t3):
    _, gb = t3
    t = [gen(i, 3) for i in range(3)]
    cube_power = poly_mul(poly_mul(t[2], t[2]), t[2])
    assert normal_form(cube_power, gb) == poly_mul(poly_mul(t[0], t[1]), t[2])
    for i in range(3):
        p = Gf2Polynomial.one(3)
        for _ in range(i + 2):
            p = poly_mul(p, t[i])
        assert normal_form(p, gb).is_zero


def test_relations_are_in_the_ideal(t3):
    rels, gb = t3
    assert all(normal_form(r, gb).is_zero for r in rels)


def test_unknown_generators_rejected(t3):
    _, gb = t3
    with pytest.raises(ValueError):
        normal_form(Gf2Polynomial.one(5), gb)


def test_normal_form_laws_randomized(t3, rng):
    _, gb = t3
    def random_poly():
        terms = []
        for _ in range(rng.randrange(6)):
            exps = [(i, rng.randrange(3)) for i in range(3)]
            terms.append(mono([(i, e) for i, e in exps if e], 3))
        return Gf2Polynomial.from_monomials(terms, 3)

    for _ in range(200):
        p, q = random_poly(), random_poly()
        nf_p = normal_form(p, gb)
        assert normal_form(nf_p, gb) == nf_p
        assert normal_form(poly_mul(p, q), gb) == normal_form(
            poly_mul(nf_p, normal_form(q, gb)), gb
        )
        assert normal_form_random_path(p, gb, rng) == nf_p


# ------------------------------------------------------- standard monomials --


def test_rank_profile_two_cube():
    gb = buchberger(cube_t_relations(2))
    basis = standard_monomials(gb, 4)
    assert basis.ranks == {0: 1, 2: 2, 4: 1}
    degree2 = [m.pairs() for m in basis.by_degree[2]]
    assert degree2 == [((0, 1),), ((1, 1),)]


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_rank_profile_binomial(n):
    import math

    gb = buchberger(cube_t_relations(n))
    basis = standard_monomials(gb, 2 * n)
    assert basis.total == 2**n
    assert basis.ranks == {2 * i: math.comb(n, i) for i in range(n + 1)}


def test_unit_ideal_has_empty_standard_basis():
    gb = buchberger(RelationSet([gen(0, 2), gen(1, 2)], 2))
    # degree-2 generators kill everything above degree 0 here; add the unit
    unit_gb = GroebnerBasis([Gf2Polynomial.one(2)], 2)
    assert standard_monomials(unit_gb, 4).total == 0
    assert standard_monomials(gb, 4).ranks == {0: 1}


def test_standard_monomials_rejects_odd_degree(t3):
    _, gb = t3
    with pytest.raises(ValueError):
        standard_monomials(gb, 3)


# --------------------------------------------------------- series inversion --


def test_inverse_of_unit_is_unit(t3):
    _, gb = t3
    one = Gf2Polynomial.one(3)
    assert series_inverse(one, gb, 6) == one


def test_inverse_in_two_cube_ring():
    gb = buchberger(cube_t_relations(2))
    one = Gf2Polynomial.one(2)
    p = one + gen(0, 2)
    assert series_inverse(p, gb, 4) == p  # t1^2 reduces to zero


def test_inverse_contract_randomized(rng):
    n = 4
    gb = buchberger(cube_t_relations(n))
    one = Gf2Polynomial.one(n)
    for _ in range(25):
        p = one
        for i in range(n):
            if rng.random() < 0.6:
                p = p + gen(i, n)
        q = series_inverse(p, gb, 2 * n)
        product = normal_form(poly_mul(p, q), gb)
        assert product.graded_component(0) == one
        for d in range(2, 2 * n + 1, 2):
            assert product.graded_component(d).is_zero


def test_inverse_requires_unit_constant_term(t3):
    _, gb = t3
    with pytest.raises(ValueError):
        series_inverse(gen(0, 3), gb, 4)


def test_make_ring_wires_names():
    ring = make_ring("t", ("t1", "t2"), cube_t_relations(2).generators)
    assert ring.render(ring.nf(poly_mul(gen(1, 2), gen(1, 2)))) == "t1*t2"
