from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from elliptic_yau.modalg import build_algebra
from elliptic_yau.scalar import Cyclo
from elliptic_yau.wpoly import E6, E7, E8, parse_wpoly
from elliptic_yau.yau import ConsistencyError, Derivation, compute_yau, module_action, structure_constants

FAMS = {"E6": E6, "E7": E7, "E8": E8}


@pytest.fixture(scope="module")
def l1_e7():
    return compute_yau(build_algebra(E7, 1, 1))


def test_dimensions_match_oracle(oracle):
    for key, want in oracle["dim_L"].items():
        fam, k, t = key.split(",")
        assert compute_yau(build_algebra(FAMS[fam], int(k), int(t))).dim == want, key


def test_symbolic_dimensions():
    assert compute_yau(build_algebra(E6, 1, "symbolic")).dim == 22
    assert compute_yau(build_algebra(E7, 0, "symbolic")).dim == 11
    assert compute_yau(build_algebra(E7, 1, "symbolic")).dim == 23


@pytest.mark.parametrize("fam", [E6, E7, E8])
@pytest.mark.parametrize("k", [0, 1])
def test_jacobi_symbolic(fam, k):
    L = compute_yau(build_algebra(fam, k, "symbolic"))
    assert L.check_jacobi()


def test_every_basis_element_preserves_the_ideal(l1_e7):
    assert all(d.preserves_ideal() for d in l1_e7.basis)


def test_euler_derivation_is_present(l1_e7):
    A = l1_e7.ambient
    euler = Derivation.parse(A, "x*dx + y*dy + 2*z*dz")
    assert l1_e7.contains(euler) and euler.degree == 0
    for u in l1_e7.basis:
        assert euler.bracket(u) == u.scale(u.degree * A.one)


def test_module_action_gives_z1():
    A = build_algebra(E7, 1, "symbolic")
    e = Derivation.parse(A, "x*dx + y*dy")
    z1 = Derivation.parse(A, "x^2*dx + x*y*dy")
    assert module_action(parse_wpoly("x", A.weights), e) == z1


coeff = st.integers(-3, 3).map(Cyclo)


@given(st.lists(coeff, min_size=3, max_size=3), st.lists(coeff, min_size=3, max_size=3))
def test_bracket_is_antisymmetric_and_closed(a, b):
    L = compute_yau(build_algebra(E6, 1, 2))
    D1 = L.slice(1)
    u = sum((D1[i].scale(c) for i, c in enumerate(a)), Derivation.zero(L.ambient))
    v = sum((D1[i + 5].scale(c) for i, c in enumerate(b)), Derivation.zero(L.ambient))
    w = u.bracket(v)
    assert w == -(v.bracket(u))
    assert L.contains(w)


def test_non_derivation_rejected(l1_e7):
    A = l1_e7.ambient
    bad = Derivation.parse(A, "y*dx")
    assert not bad.preserves_ideal()
    assert not l1_e7.contains(bad)


def test_structure_constants_of_computed_basis(l1_e7):
    sc = structure_constants(l1_e7, l1_e7.basis)
    assert sc.all_rational()
    with pytest.raises(ValueError):
        structure_constants(l1_e7, l1_e7.basis[:-1])


def test_structure_constants_reject_outside_vectors(l1_e7):
    A = l1_e7.ambient
    basis = list(l1_e7.basis)
    basis[1] = Derivation.parse(A, "y*dx")
    with pytest.raises(ConsistencyError):
        structure_constants(l1_e7, basis)


def test_solvable():
    L = compute_yau(build_algebra(E6, 1, "symbolic"))
    assert L.is_solvable()
