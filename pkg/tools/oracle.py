"""Independent dimension oracle built on sympy Groebner bases.

Computes dim A^k and dim Der(A^k) at rational parameter values without using the
package code.  Output is the JSON frozen into tests/test_oracle_values.py.
"""
from __future__ import annotations

import cmath
import itertools
import json
import sys

import sympy as sp

x, y, z = sp.symbols("x y z")
GENS = (x, y, z)

FAMILIES = {
    "E6": (lambda t: x**3 + y**3 + z**3 + t * x * y * z, (1, 1, 1)),
    "E7": (lambda t: x**4 + y**4 + z**2 + t * x**2 * y**2, (1, 1, 2)),
    "E8": (lambda t: x**6 + y**3 + z**2 + t * x**4 * y, (1, 2, 3)),
}


def ideal(fam, k, t):
    f = FAMILIES[fam][0](sp.Rational(t))
    J = [sp.diff(f, v) for v in GENS]
    mons = [x**a * y**b * z**c for a in range(k + 1) for b in range(k + 1) for c in range(k + 1) if a + b + c == k]
    return [sp.expand(f)] + [sp.expand(m * g) for m in mons for g in J]


def standard_monomials(G):
    lead = [sp.Poly(g, *GENS).monoms(order="grevlex")[0] for g in G.exprs]
    out = []
    for e in itertools.product(range(12), repeat=3):
        if not any(all(e[i] >= l[i] for i in range(3)) for l in lead):
            out.append(e)
    return out


def quotient(fam, k, t):
    G = sp.groebner(ideal(fam, k, t), *GENS, order="grevlex")
    return G, standard_monomials(G)


def der_dim(fam, k, t):
    G, std = quotient(fam, k, t)
    gens = ideal(fam, k, t)
    mon = [x**a * y**b * z**c for a, b, c in std]
    unknowns = []
    comps = []
    for i in range(3):
        for j, m in enumerate(mon):
            c = sp.Symbol(f"c_{i}_{j}")
            unknowns.append(c)
        comps.append(sum(sp.Symbol(f"c_{i}_{j}") * m for j, m in enumerate(mon)))
    eqs = []
    for g in gens:
        img = sp.expand(sum(comps[i] * sp.diff(g, GENS[i]) for i in range(3)))
        poly = sp.Poly(img, *GENS)
        # reduce each monomial coefficient separately: linear in the unknowns
        red = 0
        for monom, coeff in poly.terms():
            term = x**monom[0] * y**monom[1] * z**monom[2]
            r = G.reduce(term)[1]
            red += coeff * r
        red = sp.Poly(sp.expand(red), *GENS)
        eqs.extend(red.coeffs())
    M = sp.Matrix([[sp.diff(e, u) for u in unknowns] for e in eqs]) if eqs else sp.zeros(0, len(unknowns))
    return len(unknowns) - M.rank()


def e6_linear_symmetries(t, s, samples=6, seed=1):
    """Canonical 3x3 matrices M, entries in {0,1,rho,rho^2}, with f_t(M x) proportional to f_s(x).

    Plain complex floating point over all 4^9 matrices; independent of the package.
    """
    import numpy as np

    rho = np.exp(2j * np.pi / 3)
    vals = np.array([0, 1, rho, rho * rho])
    idx = np.array(list(itertools.product(range(4), repeat=9)))
    M = vals[idx].reshape(-1, 3, 3)
    first = np.argmax(idx[:, :3] != 0, axis=1)
    lead = idx[np.arange(len(idx)), first]
    keep = (idx[:, :3].any(axis=1)) & (lead == 1) & (np.abs(np.linalg.det(M)) > 1e-9)
    M = M[keep]
    rng = np.random.default_rng(seed)
    pts = rng.normal(size=(samples, 3)) + 1j * rng.normal(size=(samples, 3))

    def f(par, v):
        return v[..., 0] ** 3 + v[..., 1] ** 3 + v[..., 2] ** 3 + par * v[..., 0] * v[..., 1] * v[..., 2]

    imgs = np.einsum("nij,pj->npi", M, pts)
    lhs = f(complex(t), imgs)
    rhs = f(complex(s), pts)
    lam = lhs[:, 0] / rhs[0]
    ok = np.all(np.abs(lhs - lam[:, None] * rhs[None, :]) < 1e-8 * (1 + np.abs(lhs)), axis=1)
    return int(ok.sum())


def symbolic_checks():
    t = sp.symbols("t")
    R = (18 - 3 * t) / (3 + t)
    j6 = -t**3 * (t**3 - 216) ** 3 / (1728 * (t**3 + 27) ** 3)
    j6_single = -t**3 * (t**3 - 216) / (1728 * (t**3 + 27) ** 3)
    j7 = (12 + t**2) ** 3 / (108 * (t**2 - 4) ** 2)
    Rp = (12 - 2 * t) / (2 + t)
    cr = -sp.Rational(5, 16) * (t**2 + 12) ** 3 / (t**2 * (t**2 - 36) ** 2)
    return {
        "R_compose_R_is_identity": bool(sp.cancel(R.subs(t, R) - t) == 0),
        "j_E6_cubed_R_invariant": bool(sp.cancel(j6.subs(t, R) - j6) == 0),
        "j_E6_single_power_R_invariant": bool(sp.cancel(j6_single.subs(t, R) - j6_single) == 0),
        "j_E6_at_6": str(j6.subs(t, 6)),
        "j_E7_Rprime_invariant": bool(sp.cancel(j7.subs(t, Rp) - j7) == 0),
        "cross_ratio_at_1": str(cr.subs(t, 1)),
    }


if __name__ == "__main__":
    out = {"dim_A": {}, "dim_L": {}}
    out["symbolic"] = symbolic_checks()
    out["e6_linear_symmetries"] = {
        "t=1,s=1": e6_linear_symmetries(1, 1),
        "t=1,s=rho": e6_linear_symmetries(1, cmath.exp(2j * cmath.pi / 3)),
    }
    for fam, k, t in [("E6", 0, 1), ("E6", 1, 1), ("E6", 2, 1), ("E6", 3, 1), ("E7", 0, 1), ("E7", 1, 1),
                      ("E7", 2, 1), ("E8", 0, 1), ("E8", 1, 1), ("E8", 2, 1), ("E8", 3, 1)]:
        out["dim_A"][f"{fam},{k},{t}"] = len(quotient(fam, k, t)[1])
    for fam, k, t in [("E6", 1, 1), ("E6", 1, 6), ("E6", 1, 0), ("E6", 1, 2), ("E7", 0, 1), ("E7", 0, 6),
                      ("E7", 0, -6), ("E7", 0, 0), ("E7", 1, 1), ("E6", 0, 1), ("E8", 0, 1), ("E8", 1, 1)]:
        out["dim_L"][f"{fam},{k},{t}"] = der_dim(fam, k, t)
        print(fam, k, t, out["dim_L"][f"{fam},{k},{t}"], file=sys.stderr)
    print(json.dumps(out, indent=1, sort_keys=True))
