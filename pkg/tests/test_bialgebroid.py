"""Tests for bialgebroid axioms, comodule algebras and their composition.

The oracles are independent of the checked code: structure matrices for
the small group cases are frozen by hand, the dimension of a composite
of twisted group comodules is counted combinatorially, and profunctor
composition in Set (fincat) serves as the oracle for the linearization
bridge.
"""

import random

import pytest

from qcat.exactlin import GF, QQ, Matrix
from qcat.fincat import (FinCategory, compose_prof, hom_profunctor,
                         random_category, random_profunctor)
from qcat.takeuchi import FDAlgebra, TensorChain
from qcat.bialgebroid import (
    Bialgebroid, ComoduleAlgebra, associator_isomorphism, check_bialgebroid,
    check_comodule_algebra, check_comodule_map, check_unit_splitting,
    compose_dimension, compose_modules, envelope_bialgebroid,
    group_bialgebra, left_counit_contraction, linearize_category_dual,
    linearize_profunctor, one_sided_coactions, pair_product,
    random_unit_instance, right_counit_contraction, twisted_group_comodule,
    unit_comodule,
)


def one_object_z2_category():
    comp = {("e", "e"): "e", ("e", "g"): "g", ("g", "e"): "g", ("g", "g"): "e"}
    return FinCategory(["*"], ["e", "g"], {"e": "*", "g": "*"},
                       {"e": "*", "g": "*"}, {"*": "e"}, comp)


def failure_names(rep):
    return [c["name"] for c in rep.failures()]


# ---- bialgebroid axioms ---------------------------------------------------

def test_group_bialgebra_matches_hand_tables():
    b = group_bialgebra(QQ, 2)
    # delta(g^j) = g^j (x) g^j, columns frozen by hand
    assert [x for row in b.delta.rows for x in row] == [
        1, 0,
        0, 0,
        0, 0,
        0, 1]
    assert [x for row in b.epsilon.rows for x in row] == [1, 1]
    rep = check_bialgebroid(b)
    assert rep.ok, rep.summary()


def test_function_dual_of_z2_matches_hand_tables():
    """The dual construction: coefficients come from factorizations."""
    b = linearize_category_dual(one_object_z2_category(), QQ)
    assert [x for row in b.delta.rows for x in row] == [
        1, 0,
        0, 1,
        0, 1,
        1, 0]
    assert [x for row in b.epsilon.rows for x in row] == [1, 0]
    rep = check_bialgebroid(b)
    assert rep.ok, rep.summary()


def test_envelope_bialgebroids_pass_all_checks():
    for base in (FDAlgebra.split(QQ, 2), FDAlgebra.dual_numbers(QQ)):
        rep = check_bialgebroid(envelope_bialgebroid(base))
        assert rep.ok, rep.summary()


def test_envelope_over_matrices_passes_all_checks():
    # noncommutative base: the counit values are not multiplication
    # operators, which tells the four End(R) actions apart
    rep = check_bialgebroid(envelope_bialgebroid(FDAlgebra.matrix_algebra(QQ, 2)))
    assert rep.ok, rep.summary()


def test_split_envelope_product_subspace_counts_triples():
    # over k^n the centralizer condition is automatic on composable pairs,
    # so the product subspace is spanned by triples of indices
    rep = check_bialgebroid(envelope_bialgebroid(FDAlgebra.split(QQ, 2)))
    assert rep.ok, rep.summary()
    assert rep.stats["product_subspace_dim"] == 8
    b3 = envelope_bialgebroid(FDAlgebra.split(QQ, 3))
    chain = TensorChain([b3.module(), b3.module()])
    assert chain.dim == 27
    landed = chain.total_proj * b3.delta
    assert all(chain.subspace.contains(landed.column_vector(j)) for j in range(9))


def test_linearized_random_categories_are_bialgebroids():
    rng = random.Random(21)
    for _ in range(3):
        c = random_category(rng, max_objects=3, max_morphisms=7)
        rep = check_bialgebroid(linearize_category_dual(c, QQ))
        assert rep.ok, rep.summary()


def test_corrupted_counit_fails_exactly_the_counit_checks():
    b = group_bialgebra(QQ, 2)
    bad = Bialgebroid(b.base, b.total, b.s_map, b.t_map, b.delta,
                      Matrix(QQ, [[QQ.one, QQ.zero]], 2))
    assert failure_names(check_bialgebroid(bad)) == [
        "left counit diagram",
        "right counit diagram",
        "counit is multiplicative"]


def test_corrupted_coproduct_fails_coassociativity():
    n = 4
    b = group_bialgebra(QQ, n)
    cols = []
    for j in range(n):
        col = [QQ.zero] * (n * n)
        col[j * n + (2 * j) % n] = QQ.one  # delta(g^j) = g^j (x) g^(2j)
        cols.append(col)
    bad = Bialgebroid(b.base, b.total, b.s_map, b.t_map,
                      Matrix.from_columns(QQ, cols, n * n), b.epsilon)
    assert failure_names(check_bialgebroid(bad)) == [
        "coassociativity (the two flattened routes agree)",
        "left counit diagram"]


def test_broken_anchor_short_circuits():
    b = envelope_bialgebroid(FDAlgebra.split(QQ, 2))
    bad = Bialgebroid(b.base, b.total, Matrix.zeros(QQ, 4, 2), b.t_map,
                      b.delta, b.epsilon)
    rep = check_bialgebroid(bad)
    assert not rep.ok and len(rep.checks) == 1
    assert "anchor" in rep.checks[0]["name"]


# ---- comodule algebras ----------------------------------------------------

def test_unit_and_twisted_comodules_pass_all_checks():
    for m in (unit_comodule(group_bialgebra(QQ, 2)),
              unit_comodule(group_bialgebra(QQ, 3)),
              twisted_group_comodule(QQ, 2, 1, 1),
              twisted_group_comodule(QQ, 3, 2, 1),
              unit_comodule(envelope_bialgebroid(FDAlgebra.split(QQ, 2)))):
        rep = check_comodule_algebra(m)
        assert rep.ok, rep.summary()


def test_twisted_one_sided_coactions_match_hand_tables():
    m = twisted_group_comodule(QQ, 2, 1, 0)
    dl, dr = one_sided_coactions(m)
    # dl(g^j) = g^j (x) g^j, dr(g^j) = g^j (x) 1
    assert [x for row in dl.rows for x in row] == [
        1, 0,
        0, 0,
        0, 0,
        0, 1]
    assert [x for row in dr.rows for x in row] == [
        1, 0,
        0, 0,
        0, 1,
        0, 0]


def test_unit_comodule_one_sided_coactions_are_the_coproduct():
    for bgd in (group_bialgebra(QQ, 3),
                envelope_bialgebroid(FDAlgebra.split(QQ, 2))):
        dl, dr = one_sided_coactions(unit_comodule(bgd))
        ch = TensorChain([bgd.module(), bgd.module()])
        assert ch.total_proj * dl == ch.total_proj * bgd.delta
        assert ch.total_proj * dr == ch.total_proj * bgd.delta


def test_comodule_map_check_separates_the_two_laws():
    b = group_bialgebra(QQ, 3)
    m = unit_comodule(b)
    # g -> g^2 is an algebra endomorphism but not a comodule map
    perm = Matrix.from_function(QQ, 3, 3,
                                lambda i, j: QQ.one if i == (2 * j) % 3 else QQ.zero)
    rep = check_comodule_map(perm, m, m)
    assert failure_names(rep) == ["respects the coactions"]
    assert check_comodule_map(Matrix.identity(QQ, 3), m, m).ok


# ---- unit splitting -------------------------------------------------------

def test_unit_splitting_on_small_group_and_envelope():
    b = group_bialgebra(QQ, 2)
    rep = check_unit_splitting(b, unit_comodule(b))
    assert rep.ok, rep.summary()
    be = envelope_bialgebroid(FDAlgebra.split(QQ, 2))
    rep = check_unit_splitting(be, unit_comodule(be))
    assert rep.ok, rep.summary()


def test_unit_splitting_on_seeded_instances():
    rng = random.Random(23)
    for trial in range(12):
        field = GF(5) if trial % 3 == 2 else QQ
        bgd, m = random_unit_instance(rng, field)
        rep = check_unit_splitting(bgd, m)
        assert rep.ok, (trial, rep.summary())


def test_unit_splitting_detects_a_broken_coaction():
    m = twisted_group_comodule(QQ, 3, 1, 1)
    cols = [m.delta.column_vector(j) for j in range(3)]
    cols[1] = Matrix.zeros(QQ, 27, 1)
    bad = ComoduleAlgebra(m.left_bgd, m.right_bgd, m.total, m.s_map, m.t_map,
                          Matrix.from_columns(QQ, [c.entries() for c in cols], 27))
    rep = check_unit_splitting(m.left_bgd, bad)
    assert failure_names(rep) == ["retraction after the coaction is the identity"]


def test_unit_splitting_rejects_foreign_comodules():
    with pytest.raises(ValueError, match="endpoint mismatch"):
        check_unit_splitting(group_bialgebra(QQ, 2),
                             unit_comodule(group_bialgebra(QQ, 3)))


# ---- composition ----------------------------------------------------------

def test_composite_dimension_counts_matching_twists():
    """Equalizer dimension against a direct combinatorial count."""
    for n, a, b, c, d in ((2, 1, 1, 1, 0), (3, 1, 2, 2, 2), (4, 3, 2, 2, 1),
                          (4, 1, 2, 3, 0), (5, 2, 3, 4, 1)):
        m1 = twisted_group_comodule(QQ, n, a, b)
        m2 = twisted_group_comodule(QQ, n, c, d)
        expected = sum(1 for x in range(n) for y in range(n)
                       if (b * x - c * y) % n == 0)
        assert compose_dimension(m1, m2) == expected


def test_composite_of_twisted_comodules_is_lawful():
    m1 = twisted_group_comodule(QQ, 3, 1, 1)
    m2 = twisted_group_comodule(QQ, 3, 1, 2)
    comp = compose_modules(m1, m2)
    assert comp.total.dim == 3
    rep = check_comodule_algebra(comp)
    assert rep.ok, rep.summary()
    rep = comp.total.validate()
    assert rep.ok, rep.summary()


def test_cotensor_of_unit_comodules_has_group_dimension():
    for n in (2, 3, 4):
        b = group_bialgebra(QQ, n)
        assert compose_dimension(unit_comodule(b), unit_comodule(b)) == n


def test_unit_composition_isomorphism_both_ways():
    """A * M = M with explicit mutually inverse comodule maps."""
    b = group_bialgebra(QQ, 3)
    m = twisted_group_comodule(QQ, 3, 2, 1)
    comp = compose_modules(unit_comodule(b), m)
    phi = left_counit_contraction(b, m.total, m.s_map) * comp.into_raw
    dl, _ = one_sided_coactions(m)
    classes = comp.pair_chain.total_proj * comp.into_raw
    psi = classes.solve(comp.pair_chain.total_proj * dl)
    assert psi is not None
    assert phi * psi == Matrix.identity(QQ, m.total.dim)
    assert psi * phi == Matrix.identity(QQ, comp.total.dim)
    rep = check_comodule_map(phi, comp, m)
    assert rep.ok, rep.summary()


def test_composition_rejects_mismatched_middles():
    with pytest.raises(ValueError, match="endpoint mismatch"):
        compose_modules(unit_comodule(group_bialgebra(QQ, 2)),
                        unit_comodule(group_bialgebra(QQ, 3)))


def test_composite_dimension_is_bounded_by_the_chain_product():
    rng = random.Random(41)
    for _ in range(6):
        n = rng.randint(2, 4)
        m1 = twisted_group_comodule(QQ, n, rng.randrange(n), rng.randrange(n))
        m2 = twisted_group_comodule(QQ, n, rng.randrange(n), rng.randrange(n))
        chain = TensorChain([m1.module(), m2.module()])
        assert compose_dimension(m1, m2) <= chain.dim


def test_associator_is_a_comodule_isomorphism():
    m1 = twisted_group_comodule(QQ, 3, 1, 2)
    m2 = twisted_group_comodule(QQ, 3, 2, 0)
    m3 = twisted_group_comodule(QQ, 3, 0, 1)
    sol, left, right = associator_isomorphism(m1, m2, m3)
    rep = check_comodule_map(sol, left, right)
    assert rep.ok, rep.summary()
    assert sol.rank() == left.total.dim == right.total.dim


# ---- the linearization bridge ---------------------------------------------

def test_linearized_profunctors_are_lawful_comodules():
    rng = random.Random(31)
    c = random_category(rng, max_objects=3, max_morphisms=6)
    d = random_category(rng, max_objects=3, max_morphisms=6)
    p = random_profunctor(rng, c, d, max_generators=3)
    rep = check_comodule_algebra(linearize_profunctor(p, QQ))
    assert rep.ok, rep.summary()


def test_linearized_hom_profunctor_is_the_unit_comodule():
    c = random_category(random.Random(3), max_objects=3, max_morphisms=7)
    bg = linearize_category_dual(c, QQ)
    lh = linearize_profunctor(hom_profunctor(c), QQ, left=bg, right=bg)
    uc = unit_comodule(bg)
    assert list(hom_profunctor(c).elements) == list(c.morphisms)
    assert lh.delta == uc.delta
    assert lh.s_map == uc.s_map and lh.t_map == uc.t_map
    assert lh.total == uc.total


def test_bridge_dimension_matches_set_level_composition():
    rng = random.Random(11)
    for trial in range(8):
        c = random_category(rng, max_objects=4, max_morphisms=8)
        d = random_category(rng, max_objects=4, max_morphisms=8)
        e = random_category(rng, max_objects=4, max_morphisms=8)
        p = random_profunctor(rng, c, d, max_generators=4)
        q = random_profunctor(rng, d, e, max_generators=4)
        lp = linearize_profunctor(p, QQ)
        lq = linearize_profunctor(q, QQ, left=lp.right_bgd)
        assert compose_dimension(lp, lq) == len(compose_prof(p, q).elements), trial


def test_pair_product_agrees_with_the_tensor_algebra():
    rng = random.Random(17)
    a1 = FDAlgebra.cyclic_group_algebra(QQ, 2)
    a2 = FDAlgebra.split(QQ, 3)
    big = a1.tensor(a2)
    for _ in range(5):
        u = Matrix.random(QQ, 6, 1, rng)
        v = Matrix.random(QQ, 6, 1, rng)
        assert pair_product(a1, a2, u, v) == big.product(u, v)
