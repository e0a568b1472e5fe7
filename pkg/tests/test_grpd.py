from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from elliptic_yau import grpd
from elliptic_yau.grpd import (
    A1, A2, A3, A4, FREE, B, MatrixGroup, WSubstitution, brute_force_morphisms, canonical_matrix,
    e7_extend, group_G, group_G_prime, group_H, group_H_prime, induced_parameter_map, is_morphism,
    matrix, solve_E8_morphisms, transpose,
)
from elliptic_yau.scalar import I, ONE, RHO, ZERO, Cyclo, MoebiusMap, RatFunc
from elliptic_yau.wpoly import E6, E7, E8

from conftest import frac, rationals


@pytest.fixture(scope="module")
def G():
    return group_G()


@pytest.fixture(scope="module")
def hom(G):
    return grpd.verify_homomorphism_pi(G, E6)


def test_canonical_matrix():
    m = matrix([[0, RHO, 0], [1, 0, 0], [0, 0, RHO]])
    c = canonical_matrix(m)
    assert c[0][1] == ONE and c[2][2] == ONE
    assert canonical_matrix(c) == c


def test_group_orders(G):
    assert len(G) == 216
    assert G.entries() == {ZERO, ONE, RHO, RHO * RHO}
    assert G.order_profile() == {1: 1, 2: 9, 3: 80, 4: 54, 6: 72}
    H = group_H()
    assert len(H) == 12 and grpd.order_profile(H) == {1: 1, 2: 3, 3: 8}


def test_g_prime():
    Gp = group_G_prime()
    assert len(Gp) == 24 and Gp.order_profile() == {1: 1, 2: 9, 3: 8, 4: 6}
    assert set(Gp.elements) == set(grpd.G_prime_listing())


def test_pi_is_an_anti_homomorphism(G, hom):
    assert hom.ok
    assert set(hom.image) == set(group_H())
    assert len(hom.kernel) == 18
    assert hom.images[canonical_matrix(A1)] == MoebiusMap(RHO, 0, 0, 1)
    assert hom.images[canonical_matrix(A2)] == MoebiusMap(-3, 18, 1, 3)


def test_pi_prime_formula_and_kernel():
    Gp = group_G_prime()
    rep = grpd.verify_homomorphism_pi(Gp, E7)
    assert rep.ok
    for a in grpd.UNITS4:
        for b in grpd.UNITS4:
            assert rep.images[canonical_matrix(B(a, b))] == grpd.pi_prime_formula(a, b)
    klein = {canonical_matrix(B(a, b)) for a, b in ((1, 0), (-1, 0), (0, 1), (0, -1))}
    assert set(rep.kernel) == klein
    assert set(rep.image) == set(group_H_prime())


def test_a2_symbolic_morphism():
    t = RatFunc.t()
    cert = is_morphism(WSubstitution.from_matrix(A2), E6, 0, t, (18 - 3 * t) / (3 + t))
    assert cert.valid
    assert cert.report()["valid"]


def test_wrong_target_fails():
    cert = is_morphism(WSubstitution.from_matrix(A1), E6, 1, frac(1, 3), frac(1, 3))
    assert not cert.valid and "reduces to" in cert.failure


def test_non_invertible_rejected():
    with pytest.raises(grpd.NotInvertible):
        WSubstitution.from_matrix(matrix([[1, 1, 0], [1, 1, 0], [0, 0, 1]]))


def test_induced_parameter_map():
    m, lam = induced_parameter_map(WSubstitution.from_matrix(A1), E6)
    assert m == MoebiusMap(RHO, 0, 0, 1)
    assert induced_parameter_map(WSubstitution.from_matrix(A3), E6)[0] == MoebiusMap.identity()


@settings(max_examples=10)
@given(st.sampled_from(range(216)), rationals(E6))
def test_elements_are_morphisms(G, hom, i, t):
    g = G.elements[i]
    s = hom.images[g](t)
    if E6.is_excluded(s) or E6.is_jump(s):
        return
    assert is_morphism(WSubstitution.from_matrix(g), E6, 1, t, s).valid


@settings(max_examples=10)
@given(st.sampled_from(range(216)), rationals(E6))
def test_transpose_duality(G, hom, i, t):
    g = G.elements[i]
    s = hom.images[g](t)
    if E6.is_excluded(s) or E6.is_jump(s):
        return
    assert grpd.transpose_duality(g, t, s).valid
    assert transpose(transpose(g)) == g


@given(st.sampled_from(range(216)), st.sampled_from(range(216)))
def test_closure_under_multiplication(G, i, j):
    g, h = G.elements[i], G.elements[j]
    assert G.mul(g, h) in G
    assert G.mul(g, G.inverse(g)) == G.identity


def test_e6_classification_counts():
    sparse = grpd.e6_sparse_solutions()
    dense = grpd.e6_dense_solutions()
    assert {k: len(v) for k, v in sparse.items()} == {n: 9 for n in ("I", "II", "III", "IV", "V", "VI")}
    assert len(dense) == 162
    union = {m for v in sparse.values() for m in v} | set(dense)
    assert union == set(group_G().elements)


def test_e6_relations_at_sample(G, hom):
    t = frac(2, 7)
    for g in G.elements[:40]:
        s = hom.images[g](t)
        assert grpd.e6_row_invariant_equal(g, s)
        assert grpd.e6_inverse_relation_holds(g, s)


def test_e7_identity_all_pairs():
    from elliptic_yau.invar import e7_identity_check

    assert all(e7_identity_check().values())


def test_e7_extension_is_morphism():
    t = frac(1, 3)
    b = canonical_matrix(B(I, ONE))
    sub = e7_extend(b, t)
    s = grpd.pi_prime_formula(I, ONE)(t)
    assert is_morphism(sub, E7, 1, t, s).valid


def test_brute_force_matches_oracle_stabilizer(oracle, G, hom):
    found = brute_force_morphisms(E6, 1, 1, 1)
    assert len(found) == oracle["e6_linear_symmetries"]["t=1,s=1"]
    assert set(found) == {g for g in G.elements if hom.images[g](ONE) == ONE}
    to_rho = brute_force_morphisms(E6, 1, 1, RHO)
    assert len(to_rho) == oracle["e6_linear_symmetries"]["t=1,s=rho"]
    assert all(hom.images[g](ONE) == RHO for g in to_rho)


def test_groupoid_chain():
    rep = grpd.groupoid_chain(frac(1, 3), frac(1, 3))
    assert rep.ok, rep.report()


def test_e7_brute_force_at_k2():
    t = frac(1, 3)
    found = brute_force_morphisms(E7, 2, t, t)
    klein = {canonical_matrix(B(a, b)) for a, b in ((1, 0), (-1, 0), (0, 1), (0, -1))}
    assert {b for b, _ in found} == klein
    assert all(g == ONE for _, g in found)
    low = brute_force_morphisms(E7, 1, t, t)
    assert all(g == FREE for _, g in low)


def test_e8_low_k_families():
    for k in (0, 1):
        sol = solve_E8_morphisms(k, frac(2, 5))
        assert grpd.e8_found_branches(sol) == grpd.e8_expected_branches(k, frac(2, 5))
        at0 = solve_E8_morphisms(k, 0)
        assert grpd.e8_found_branches(at0) == {(ZERO, FREE, FREE)}


def test_e8_high_k_has_sign_of_z():
    # z -> -z fixes f, so each rotation comes with c = +-1
    sol = solve_E8_morphisms(2, frac(2, 5))
    found = grpd.e8_found_branches(sol)
    expected = grpd.e8_expected_branches(2, frac(2, 5))
    assert expected < found
    assert {(s, a, -c) for s, a, c in expected} == found - expected
    phi = WSubstitution.e8(ONE, ZERO, -ONE, ZERO, ZERO)
    assert is_morphism(phi, E8, None, frac(2, 5), frac(2, 5)).valid


def test_matrix_group_of_generators():
    S = MatrixGroup([A3, A4])
    assert len(S) == 6
    assert Cyclo(1) in {e for g in S.elements for r in g for e in r}
