from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from elliptic_yau import invar
from elliptic_yau.grpd import group_H, group_H_prime
from elliptic_yau.scalar import RHO, Cyclo, MoebiusMap, RatFunc, parse_ratfunc
from elliptic_yau.wpoly import E6, E7, E8

from conftest import frac, small_fractions


@pytest.fixture(scope="module")
def four_lines():
    return invar.e7_four_lines()


def test_j_invariance():
    rep = invar.j_invariance_report()
    assert len(rep["E6"]) == 12 and all(rep["E6"].values())
    assert len(rep["E7"]) == 6 and all(rep["E7"].values())
    assert all(rep["E8"].values())


def test_single_power_j_is_not_invariant(oracle):
    R = MoebiusMap(-3, 18, 1, 3)
    j1 = invar.j_e6_single_power()
    assert (j1.compose(R.as_ratfunc()) == j1) == oracle["symbolic"]["j_E6_single_power_R_invariant"]
    j = invar.j_function(E6)
    assert (j.compose(R.as_ratfunc()) == j) == oracle["symbolic"]["j_E6_cubed_R_invariant"]


def test_j_vanishes_at_6(oracle):
    assert invar.j_function(E6).eval(6) == parse_ratfunc(oracle["symbolic"]["j_E6_at_6"]).const_value()


def test_j_rejects_unknown_family():
    with pytest.raises(ValueError):
        invar.j_function(object())


points = st.tuples(small_fractions, small_fractions).filter(lambda p: p != (0, 0))


@given(st.lists(points, min_size=4, max_size=4))
def test_cross_ratio_properties(pts):
    pts = [tuple(Fraction(c) for c in p) for p in pts]
    dets = [invar.det2(pts[i], pts[j]) for i in range(4) for j in range(i + 1, 4)]
    assume(all(d != 0 for d in dets))
    cr = invar.cross_ratio(*pts)
    # swapping within both pairs keeps the value
    assert invar.cross_ratio(pts[1], pts[0], pts[3], pts[2]) == cr
    assert invar.cross_ratio(pts[1], pts[0], pts[2], pts[3]) == 1 / cr
    six = invar.six_values(pts)
    assert cr in six and len(six) <= 6
    assert invar.six_values_closed(six)


@given(st.lists(points, min_size=4, max_size=4), st.integers(-4, 4), st.integers(-4, 4))
def test_cross_ratio_is_projective(pts, a, b):
    pts = [tuple(Fraction(c) for c in p) for p in pts]
    assume(all(invar.det2(pts[i], pts[j]) != 0 for i in range(4) for j in range(i + 1, 4)))
    # apply the invertible map (p, q) -> (p + a q, b p + q) when 1 - a b != 0
    assume(1 - a * b != 0)
    moved = [(p + a * q, b * p + q) for p, q in pts]
    assert invar.cross_ratio(*moved) == invar.cross_ratio(*pts)


def test_quartic_arithmetic():
    t = RatFunc.t()
    C = invar.Quartic.gen(t)
    assert C ** 4 == C * C * (12 / t) - 1
    assert C * (1 / C) == invar.Quartic([1], t)
    assert (C * C + 1 / (C * C)).scalar() == 12 / t
    with pytest.raises(ValueError):
        C.scalar()


def test_zeroth_lines():
    zl = invar.e7_zeroth_lines()
    assert zl.ok
    assert invar.six_values_closed(zl.six)
    for h in group_H_prime():
        assert invar.six_values_invariant(zl.six, h)


def test_four_lines(four_lines):
    fl = four_lines
    assert fl.ok, fl.checks
    assert fl.h4_rule == "[V*, U*]"
    t = RatFunc.t()
    assert fl.cross_ratio == invar.expected_cross_ratio(t)
    for k, d in {"e1": 1, "Z": 2, "V": 4, "U": 4, "H1": 1, "H2": 1, "H3": 1, "H4": 1}.items():
        assert fl.dims[k] == d, k


def test_h2_forms(four_lines):
    assert four_lines.checks_h2_forms == {"polynomial form": True, "basis form": False}


def test_cross_ratio_at_one_matches_oracle(oracle):
    fl = invar.e7_four_lines(1)
    assert fl.ok
    assert fl.cross_ratio == parse_ratfunc(oracle["symbolic"]["cross_ratio_at_1"]).const_value()


def test_cross_ratio_invariant_under_h_prime(four_lines):
    cr = four_lines.cross_ratio
    for h in group_H_prime():
        assert cr.compose(h.as_ratfunc()) == cr


@settings(max_examples=5)
@given(small_fractions)
def test_specialized_four_lines(q):
    t0 = Cyclo.rational(q)
    assume(not E7.is_excluded(t0) and not E7.is_jump(t0))
    fl = invar.e7_four_lines(t0)
    assert fl.ok
    assert fl.cross_ratio == invar.expected_cross_ratio(t0)


def test_e7_identity():
    res = invar.e7_identity_check()
    assert len(res) == 16 and all(res.values())


def test_pushforward_slopes():
    for a in (1, -1):
        ok, _ = invar.g_prime_pushforward_slope(invar.B(Cyclo(a), Cyclo(0)))
        assert ok


def test_torelli_symbolic():
    cert = invar.torelli_certificate()
    assert cert.ok, cert.mismatches
    assert not cert.e12_printed_valid
    assert cert.e12_reading == invar.E6_E12_ALTERNATIVE


def test_torelli_at_sample():
    cert = invar.torelli_certificate(frac(2, 3))
    assert cert.ok and cert.all_rational


def test_e8_rotation():
    j = invar.j_function(E8)
    t = RatFunc.t()
    assert j.compose(t * RHO) == j
    assert len(group_H()) == 12
