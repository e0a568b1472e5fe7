from __future__ import annotations

import pytest
from hypothesis import assume, given, settings

from elliptic_yau.modalg import TruncationError, build_algebra, presentation_algebra
from elliptic_yau.scalar import Cyclo
from elliptic_yau.wpoly import E6, E7, E8, ExcludedParameter, ideal_generators, parse_wpoly

from conftest import small_fractions

FAMS = {"E6": E6, "E7": E7, "E8": E8}


def test_e6_first_moduli_basis():
    A = build_algebra(E6, 1, "symbolic")
    assert A.dim == 11
    assert [parse_wpoly(m).text() for m in A.report()["basis"]] == [
        "1", "x", "y", "z", "x^2", "y^2", "z^2", "x*y", "x*z", "y*z", "x*y*z",
    ]
    assert A.hilbert_function() == [(0, 1), (1, 3), (2, 6), (3, 1)]


def test_e7_tjurina_basis():
    A = build_algebra(E7, 0, "symbolic")
    assert A.dim == 9
    assert A.report()["basis"] == ["1", "x", "y", "x^2", "y^2", "x*y", "x^2*y", "x*y^2", "x^2*y^2"]


def test_e6_tjurina_dimension_is_milnor_number():
    assert build_algebra(E6, 0, "symbolic").dim == 8


def test_dimensions_match_oracle(oracle):
    for key, want in oracle["dim_A"].items():
        fam, k, t = key.split(",")
        assert build_algebra(FAMS[fam], int(k), int(t)).dim == want, key


def test_relations_reduce_to_zero():
    A = build_algebra(E6, 1, "symbolic")
    for g in ideal_generators(E6, 1, "symbolic"):
        assert A.is_zero_mod(g)
    # x^3 is not standard: it reduces to a multiple of x y z
    nf = A.nf_terms(parse_wpoly("x^3"))
    assert set(nf) == {(1, 1, 1)}


def test_multiplication_is_commutative_and_associative():
    A = build_algebra(E7, 1, 1)
    x, y = parse_wpoly("x", A.weights, True), parse_wpoly("y", A.weights, True)
    assert A.multiply(x, y) == A.multiply(y, x)
    assert A.multiply(A.multiply(x, x), y) == A.multiply(x, A.multiply(x, y))


def test_infinite_k_needs_bound():
    with pytest.raises(TruncationError):
        build_algebra(E6, None, 1)
    A = build_algebra(E6, None, 1, bound=3)
    assert A.is_truncated and A.dim == 1 + 3 + 6 + 9
    with pytest.raises(TruncationError):
        A.nf_terms(parse_wpoly("x^4", constants=True))


def test_excluded_parameter_rejected():
    with pytest.raises(ExcludedParameter):
        build_algebra(E7, 1, 2)


def test_presentation_algebra_matches_build():
    gens = ideal_generators(E8, 1, 2)
    assert presentation_algebra(E8, gens, 2).dim == build_algebra(E8, 1, 2).dim


@pytest.mark.parametrize("fam", [E6, E7, E8])
@settings(max_examples=5)
@given(t0=small_fractions.map(Cyclo.rational))
def test_specialization_consistency(fam, t0):
    assume(not fam.is_excluded(t0) and not fam.is_jump(t0))
    rep = build_algebra(fam, 1, "symbolic").specialize_check(t0)
    assert rep["consistent"], rep


def test_specialization_detects_e8_jump():
    rep = build_algebra(E8, 0, "symbolic").specialize_check(0)
    assert rep["jump_point"] and not rep["consistent"]


def test_report_is_plain_data():
    rep = build_algebra(E6, 1, "symbolic").report()
    assert rep["dim"] == 11 and rep["t"] == "symbolic"
    assert all(isinstance(r[3], str) for r in rep["mult_table"])
