from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from elliptic_yau.scalar import ONE, RHO, RatFunc
from elliptic_yau.wpoly import (
    E6, E7, E8, ExcludedParameter, WPoly, family, ideal_generators, jacobi_ideal, parse_wpoly,
)

from conftest import cyclos, frac

exps = st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))
polys = st.dictionaries(exps, cyclos, max_size=5).map(lambda d: WPoly(d))


@given(polys, polys, polys)
def test_ring_laws(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r


@given(polys, polys)
def test_leibniz(p, q):
    for i in range(3):
        assert (p * q).deriv(i) == p.deriv(i) * q + p * q.deriv(i)


def test_weighted_degrees():
    assert E6.f("symbolic").degree() == 3
    assert E7.f("symbolic").degree() == 4
    assert E8.f("symbolic").degree() == 6
    assert E8.degree == 6


def test_inhomogeneous_degree_raises():
    p = parse_wpoly("x + y^2")
    assert not p.is_homogeneous()
    with pytest.raises(ValueError):
        p.degree()


def test_parse_and_text():
    p = parse_wpoly("x^3 + y^3 + z^3 + t*x*y*z")
    assert p == E6.f("symbolic")
    q = parse_wpoly(p.text())
    assert q == p


def test_substitution_scales_f():
    # x -> rho x scales the cubic terms trivially and t x y z by rho
    f = E6.f("symbolic")
    one = RatFunc.const(1)
    imgs = [WPoly.var(0, one=one).scale(RatFunc.const(RHO)), WPoly.var(1, one=one), WPoly.var(2, one=one)]
    g = f.substitute(imgs)
    assert g == E6.f(RatFunc.t() * RHO)


def test_families_lookup():
    assert family("e7") is E7
    with pytest.raises(ValueError):
        family("E9")


def test_excluded_parameters():
    for fam, bad in ((E6, -3), (E6, -3 * RHO), (E6, 3), (E7, 2), (E7, -2)):
        assert fam.is_excluded(bad)
        with pytest.raises(ExcludedParameter):
            ideal_generators(fam, 1, bad)
    # the E8 roots of 4 t^3 + 27 lie outside Q(zeta_12); check the polynomial itself
    t = RatFunc.t()
    assert E8.excluded_value(t) == 4 * t ** 3 + 27
    assert not E8.is_excluded(0) and not E8.is_excluded(frac(-3, 2))
    assert not E6.is_excluded("symbolic")


def test_jump_points():
    assert all(E6.is_jump(t) for t in (0, 6, 6 * RHO, 6 * RHO * RHO))
    assert all(E7.is_jump(t) for t in (0, 6, -6))
    assert E8.is_jump(0) and not E8.is_jump(1)
    assert not E6.is_jump("symbolic")


def test_jacobi_and_generators():
    f = E7.f(1)
    J = jacobi_ideal(f)
    assert J[2] == parse_wpoly("2*z", E7.weights, constants=True)
    gens = ideal_generators(E7, 1, 1)
    assert len(gens) == 1 + 3 * 3
    assert ideal_generators(E7, None, 1) == [f]
    with pytest.raises(ValueError):
        ideal_generators(E7, -1, 1)


def test_specialize():
    f = E8.f("symbolic")
    assert f.specialize(2) == E8.f(2)
    assert E8.f(2).terms[(4, 1, 0)] == 2 * ONE
