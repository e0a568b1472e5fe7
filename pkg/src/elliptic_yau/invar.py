"""Invariants: j-functions, cross-ratios of invariant lines, structure-constant certificates."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Optional, Sequence

from . import _linalg as la
from .grpd import (
    B,
    UNITS4,
    WSubstitution,
    e7_extend,
    induced_parameter_map,
    group_H,
    group_H_prime,
    mat_inv,
    pi_prime_formula,
)
from .modalg import ModuliAlgebra, build_algebra
from .scalar import RHO, Cyclo, MoebiusMap, RatFunc, as_cyclo, field_one, field_zero, is_zero
from .wpoly import E6, E7, E8, FamilyDef, WPoly, _as_param, parse_expression
from .yau import ConsistencyError, Derivation, StructureConstants, YauAlgebra, compute_yau


class ConstructionError(RuntimeError):
    """A step of an invariant-subspace construction produced an unexpected dimension."""

    def __init__(self, step: str, message: str):
        super().__init__(f"{step}: {message}")
        self.step = step


# ---------------------------------------------------------------------------
# j-functions

def _t():
    return RatFunc.t()


def j_function(fam: FamilyDef) -> RatFunc:
    t = _t()
    if fam is E6:
        return -(t ** 3) * (t ** 3 - 216) ** 3 / ((t ** 3 + 27) ** 3 * 1728)
    if fam is E7:
        return (t * t + 12) ** 3 / ((t * t - 4) ** 2 * 108)
    if fam is E8:
        return t ** 3 * 4 / (t ** 3 * 4 + 27)
    raise ValueError(f"no j-function for {getattr(fam, 'name', fam)!r}")


def j_e6_single_power() -> RatFunc:
    """The variant with (t^3 - 216) to the first power; it is not H-invariant."""
    t = _t()
    return -(t ** 3) * (t ** 3 - 216) / ((t ** 3 + 27) ** 3 * 1728)


def j_invariant_under(fam: FamilyDef, maps: Sequence[MoebiusMap]) -> dict[str, bool]:
    """j(h(t)) == j(t) for each map h, as rational functions."""
    j = j_function(fam)
    return {h.text(): j.compose(h.as_ratfunc()) == j for h in maps}


def j_invariance_report() -> dict:
    e8_rot = MoebiusMap(RHO, 0, 0, 1)
    return {
        "E6": j_invariant_under(E6, group_H()),
        "E7": j_invariant_under(E7, group_H_prime()),
        "E8": j_invariant_under(E8, [e8_rot, e8_rot.compose(e8_rot)]),
    }


# ---------------------------------------------------------------------------
# cross-ratios

def det2(p, q):
    return p[0] * q[1] - p[1] * q[0]


def cross_ratio(p1, p2, p3, p4):
    """Cross-ratio of four points of P^1 given by homogeneous coordinates."""
    return det2(p1, p3) * det2(p2, p4) / (det2(p2, p3) * det2(p1, p4))


def six_values(points: Sequence) -> list:
    """Distinct cross-ratios over the 24 orderings."""
    out = []
    for perm in permutations(range(4)):
        v = cross_ratio(*(points[i] for i in perm))
        if v not in out:
            out.append(v)
    return out


class Quartic:
    """Elements of Q(t)[C]/(C^4 - (12/t) C^2 + 1), stored as 4 coefficients."""

    __slots__ = ("c", "t")

    def __init__(self, coeffs, t=None):
        t = _t() if t is None else t
        zero = field_zero(t) + 0 * t
        c = [zero + v for v in coeffs] + [zero] * (4 - len(coeffs))
        self.c = tuple(c[:4])
        self.t = t

    @classmethod
    def gen(cls, t=None):
        return cls([0, 1], t)

    def _lift(self, o):
        return o if isinstance(o, Quartic) else Quartic([o], self.t)

    def __add__(self, o):
        o = self._lift(o)
        return Quartic([a + b for a, b in zip(self.c, o.c)], self.t)

    __radd__ = __add__

    def __neg__(self):
        return Quartic([-a for a in self.c], self.t)

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        o = self._lift(o)
        prod = [self.c[0] * 0] * 7
        for i, a in enumerate(self.c):
            if is_zero(a):
                continue
            for j, b in enumerate(o.c):
                prod[i + j] = prod[i + j] + a * b
        k = 12 / self.t
        # C^4 = k C^2 - 1
        for n in (6, 5, 4):
            v = prod[n]
            if is_zero(v):
                continue
            prod[n] = v * 0
            prod[n - 2] = prod[n - 2] + k * v
            prod[n - 4] = prod[n - 4] - v
        return Quartic(prod[:4], self.t)

    __rmul__ = __mul__

    def matrix(self):
        cols = [(self * Quartic([0] * i + [1], self.t)).c for i in range(4)]
        return [[cols[j][i] for j in range(4)] for i in range(4)]

    def inverse(self) -> "Quartic":
        zero, one = field_zero(self.t) + 0 * self.t, field_one(self.t) + 0 * self.t
        sol = la.solve_in_span([list(r) for r in zip(*self.matrix())], [one, zero, zero, zero], zero)
        if sol is None:
            raise ZeroDivisionError("not invertible")
        return Quartic(sol, self.t)

    def __truediv__(self, o):
        return self * self._lift(o).inverse()

    def __rtruediv__(self, o):
        return self._lift(o) * self.inverse()

    def __pow__(self, n):
        r = Quartic([1], self.t)
        for _ in range(n):
            r = r * self
        return r

    def is_zero(self):
        return all(is_zero(a) for a in self.c)

    def __eq__(self, o):
        o = self._lift(o)
        return (self - o).is_zero()

    def __hash__(self):
        return hash(self.c)

    def scalar(self):
        """The value when the element lies in the base field."""
        if any(not is_zero(a) for a in self.c[1:]):
            raise ValueError("element involves C")
        return self.c[0]


@dataclass
class ZerothLines:
    t: object
    slopes: list  # slopes of l1..l4 in the quartic ring
    lines: list  # (e9, e10) coordinates
    six: list
    plane_is_top_degree: bool
    basis_ok: bool
    expected: list

    @property
    def ok(self) -> bool:
        return self.basis_ok and self.plane_is_top_degree and set(self.six) == set(self.expected)


E7_L0_BASIS = (
    "x*dx + y*dy",
    "x^2*dx + x*y*dy",
    "x*y*dx + y^2*dy",
    "(t^2-12)*x*y*dx + 4*t*x^2*dy",
    "4*t*y^2*dx + (t^2-12)*x*y*dy",
    "x^2*y*dx",
    "x*y^2*dy",
    "x*y^2*dx",
    "x^2*y*dy",
    "x^2*y^2*dx",
    "x^2*y^2*dy",
)


def expected_six(t) -> list:
    return [(t + 6) / (2 * t), (2 * t) / (t + 6), (t + 6) / (6 - t), (6 - t) / (t + 6), (2 * t) / (t - 6), (t - 6) / (2 * t)]


def e7_zeroth_lines() -> ZerothLines:
    """Four lines in the top-degree plane of L^0(E7; t) and their six cross-ratios."""
    t = _t()
    A = build_algebra(E7, 0, t)
    L = compute_yau(A)
    basis = [Derivation.parse(A, s) for s in E7_L0_BASIS]
    try:
        StructureConstants(L, basis)
        basis_ok = True
    except (ConsistencyError, ValueError):
        basis_ok = False
    top = max(L.by_degree)
    plane_ok = top == 3 and len(L.by_degree[3]) == 2 and all(L.contains(b) and b.degree == 3 for b in basis[9:])
    C = Quartic.gen(t)
    for s in (C, -C, 1 / C, -(1 / C)):
        if not (s * s + 1 / (s * s)) == Quartic([12 / t], t):
            raise ConstructionError("slopes", "a slope does not solve the defining equation")
    one = Quartic([1], t)
    lines = [(C, one), (one, C), (-C, one), (one, -C)]
    six = [v.scalar() for v in six_values(lines)]
    return ZerothLines(t, [C, 1 / C, -C, -(1 / C)], lines, six, plane_ok, basis_ok, expected_six(t))


def six_values_closed(values: Sequence[RatFunc]) -> bool:
    return all((1 / v) in values for v in values)


def six_values_invariant(values: Sequence[RatFunc], h: MoebiusMap) -> bool:
    r = h.as_ratfunc()
    return set(v.compose(r) for v in values) == set(values)


def g_prime_pushforward_slope(block, t=None) -> tuple[bool, MoebiusMap]:
    """Push l1 forward along x = block x' and check the new slope solves the equation at s."""
    t = _t() if t is None else t
    inv = mat_inv(block)
    C = Quartic.gen(t)
    # phi_*(d/dx_j) = sum_i inv[i][j] d/dx'_i; the coefficient x^2 y^2 maps into the socle
    a, b = C, Quartic([1], t)
    e9 = a * inv[0][0] + b * inv[0][1]
    e10 = a * inv[1][0] + b * inv[1][1]
    m, _ = induced_parameter_map(e7_extend(block), E7)
    s = m.as_ratfunc()
    lhs = e9 ** 4 + e10 ** 4
    rhs = e9 * e9 * e10 * e10 * Quartic([12 / s], t)
    return lhs == rhs, m


# ---------------------------------------------------------------------------
# subspaces of one graded piece

class Space:
    """Subspace of the degree-d derivations, kept as an echelon list."""

    def __init__(self, A: ModuliAlgebra, degree: int, gens: Sequence[Derivation]):
        self.A = A
        self.degree = degree
        gens = [g for g in gens if not g.is_zero()]
        vecs = [g.vector(degree) for g in gens]
        if vecs:
            basis = la.span_basis(vecs)
            self.basis = [Derivation.from_vector(A, degree, v) for v in basis]
        else:
            self.basis = []

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vectors(self):
        return [b.vector(self.degree) for b in self.basis]

    def contains(self, u: Derivation) -> bool:
        if u.is_zero():
            return True
        if u.degree != self.degree or not self.basis:
            return False
        return la.solve_in_span(self.vectors(), u.vector(), self.A.zero) is not None

    def coords(self, u: Derivation) -> list:
        c = la.solve_in_span(self.vectors(), u.vector(self.degree), self.A.zero)
        if c is None:
            raise ConsistencyError("vector outside the subspace")
        return c

    def intersect(self, other: "Space") -> "Space":
        if not self.basis or not other.basis:
            return Space(self.A, self.degree, [])
        inter = la.intersect(self.vectors(), other.vectors(), self.A.zero, self.A.one)
        return Space(self.A, self.degree, [Derivation.from_vector(self.A, self.degree, v) for v in inter])

    def __add__(self, other: "Space") -> "Space":
        return Space(self.A, self.degree, self.basis + other.basis)

    def __eq__(self, other):
        return self.dim == other.dim and all(other.contains(b) for b in self.basis)


def bracket_span(A, X: Sequence[Derivation], Y: Sequence[Derivation], degree: int) -> Space:
    return Space(A, degree, [x.bracket(y) for x in X for y in Y])


def kernel_of_bracket(A, X: Space, Y: Sequence[Derivation], target_degree: int) -> Space:
    """{x in X : [x, y] = 0 for all y in Y}."""
    if not X.basis:
        return X
    if not Y:
        return X
    n = X.dim
    from .yau import coordinate_index

    rows = []
    ncoords = len(coordinate_index(A, target_degree))
    blocks = [[x.bracket(y).vector(target_degree) for x in X.basis] for y in Y]
    for blk in blocks:
        for r in range(ncoords):
            rows.append([blk[i][r] for i in range(n)])
    ker = la.nullspace(rows, n, A.zero, A.one)
    gens = []
    for v in ker:
        acc = Derivation.zero(A)
        for c, b in zip(v, X.basis):
            if not is_zero(c):
                acc = acc + b.scale(c)
        gens.append(acc)
    return Space(A, X.degree, gens)


def _combo(A, coeffs, vecs) -> Derivation:
    acc = Derivation.zero(A)
    for c, v in zip(coeffs, vecs):
        if not is_zero(c):
            acc = acc + v.scale(c)
    return acc


def _slice_coords(L: YauAlgebra, u: Derivation, degree: int) -> list:
    if u.is_zero():
        return [L.ambient.zero] * len(L.by_degree.get(degree, []))
    c = L.coordinates(u)
    if c is None:
        raise ConsistencyError(f"{u.text()} is not in the Yau algebra")
    return c


def _sqrt_rational(v) -> Optional[Cyclo]:
    from math import isqrt

    if isinstance(v, RatFunc):
        if not v.is_const():
            return None
        v = v.const_value()
    if not v.is_rational():
        return None
    q = v.to_fraction()
    if q <= 0:
        return None
    n, d = isqrt(q.numerator), isqrt(q.denominator)
    if n * n != q.numerator or d * d != q.denominator:
        return None
    return as_cyclo(Fraction(n, d))


def _e7_l1_named_vectors(A, t) -> dict:
    """The explicit vectors named in the construction, built over the coefficient field of A."""

    def d(text: str) -> Derivation:
        terms = parse_expression(text, True, ("x", "y", "z", "dx", "dy", "dz"))
        comps = [dict(), dict(), dict()]
        for e, c in terms.items():
            i = e[3:].index(1)
            c = c if A.symbolic else c.eval(as_cyclo(t))
            comps[i][e[:3]] = c
        return Derivation(A, [WPoly(c, A.weights) for c in comps])

    e = {
        3: "x^2*dx", 4: "y^2*dx", 5: "x*y*dx", 6: "x^2*dy", 7: "y^2*dy", 8: "x*y*dy",
        14: "x^2*y*dx", 15: "x*y^2*dx", 16: "y^3*dx", 17: "x^3*dy", 18: "x^2*y*dy", 19: "x*y^2*dy",
    }
    v = {f"e{k}": d(s) for k, s in e.items()}
    v["z1"] = d("x^2*dx + x*y*dy")
    v["z2"] = d("x*y*dx + y^2*dy")
    v["v1"] = d("4*t*y^2*dx + 8*x^2*dx + (t^2-4)*x*y*dy")
    v["v2"] = d("4*t*x^2*dy + 8*y^2*dy + (t^2-4)*x*y*dx")
    v["u1"] = d("(t/3)*x^2*dx + 2*y^2*dx - (2*t/3)*x*y*dy")
    v["u2"] = d("(t/3)*y^2*dy + 2*x^2*dy - (2*t/3)*x*y*dx")
    v["h1"] = d("t*x^2*y*dx + 2*y^3*dx - 2*x^3*dy - t*x*y^2*dy")
    v["h2_poly"] = d("((t^2-12)*x^2*y - 4*t*y^3)*dx - ((t^2-12)*x*y^2 - 4*t*x^3)*dy")
    v["h2_basis"] = d("(t^2-12)*x*y^2*dx - 4*t*y^3*dx + 4*t*x^3*dy - (t^2-12)*x^2*y*dy")
    return v


@dataclass
class FourLines:
    t: object
    dims: dict
    spaces: dict
    h: list  # computed generators of H1..H4
    plane: list  # generators (g1, g2) of <H1, H2>
    coords: list  # coordinates of h1..h4 in (g1, g2)
    cross_ratio: object
    checks: dict = field(default_factory=dict)
    h4_rule: str = "[V, U*]"

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def e7_four_lines(t="symbolic") -> FourLines:
    """The invariant lines H1..H4 of L^1(E7; t), computed from the bracket alone."""
    t = _as_param(t)
    A = build_algebra(E7, 1, t)
    L = compute_yau(A)
    D = {d: L.slice(d) for d in L.by_degree}
    dims = {d: len(v) for d, v in D.items()}
    if dims != {0: 2, 1: 10, 2: 9, 3: 2}:
        raise ConstructionError("degrees", f"unexpected degree profile {dims}")

    # (1) the elements of D^0 killing D^3
    E1 = kernel_of_bracket(A, Space(A, 0, D[0]), D[3], 3)
    if E1.dim != 1:
        raise ConstructionError("step 1", f"centralizer of D^3 has dimension {E1.dim}")
    v = E1.basis[0]
    # normalize so that ad_v has eigenvalues 0, +-1 on D^1
    ad = [_slice_coords(L, v.bracket(u), 1) for u in D[1]]  # rows: images
    M = [list(r) for r in zip(*ad)]
    M3 = la.mat_mul(la.mat_mul(M, M, A.zero), M, A.zero)
    mu2 = None
    for i in range(10):
        for j in range(10):
            if not is_zero(M[i][j]):
                mu2 = M3[i][j] / M[i][j]
                break
        if mu2 is not None:
            break
    if mu2 is None or any(M3[i][j] != mu2 * M[i][j] for i in range(10) for j in range(10)):
        raise ConstructionError("step 2", "ad_v does not satisfy ad^3 = mu^2 ad")
    mu = _sqrt_rational(mu2)
    if mu is None:
        raise ConstructionError("step 2", f"eigenvalue square {mu2.text()} is not a rational square")

    def eigenspace(vv, lam):
        gens = []
        n = len(D[1])
        vecs = [(vv.bracket(u) - u.scale(lam * A.one) if lam else vv.bracket(u)).vector(1) for u in D[1]]
        rows = [[vecs[i][r] for i in range(n)] for r in range(len(vecs[0]))]
        for sol in la.nullspace(rows, n, A.zero, A.one):
            gens.append(_combo(A, sol, D[1]))
        return Space(A, 1, gens)

    chosen = None
    for sign in (1, -1):
        vv = v.scale(sign / mu * A.one)
        D10, D1p, D1m = eigenspace(vv, 0), eigenspace(vv, 1), eigenspace(vv, -1)
        if (D10.dim, D1p.dim, D1m.dim) != (6, 2, 2):
            raise ConstructionError("step 2", f"eigenspace dimensions {(D10.dim, D1p.dim, D1m.dim)}")
        V = kernel_of_bracket(A, D10, D1m.basis, 2)
        if V.dim == 4:
            if chosen is not None:
                raise ConstructionError("step 3", "both normalizations give a 4-dimensional V")
            chosen = (vv, D10, D1p, D1m, V)
    if chosen is None:
        raise ConstructionError("step 3", "no normalization gives a 4-dimensional V")
    e1, D10, D1p, D1m, V = chosen

    # (4) Z from the kernel of the bracket on the exterior square of V
    pairs = [(i, j) for i in range(4) for j in range(i + 1, 4)]
    br = [V.basis[i].bracket(V.basis[j]).vector(2) for i, j in pairs]
    rows = [[br[p][r] for p in range(6)] for r in range(len(br[0]))]
    ker = la.nullspace(rows, 6, A.zero, A.one)
    if len(ker) != 1:
        raise ConstructionError("step 4", f"kernel of the bracket on the exterior square has dimension {len(ker)}")
    c = dict(zip(pairs, ker[0]))
    pf = c[(0, 1)] * c[(2, 3)] - c[(0, 2)] * c[(1, 3)] + c[(0, 3)] * c[(1, 2)]
    if not is_zero(pf):
        raise ConstructionError("step 4", "kernel bivector is not decomposable")
    anti = [[A.zero] * 4 for _ in range(4)]
    for (i, j), val in c.items():
        anti[i][j] = val
        anti[j][i] = -val
    Z = Space(A, 1, [_combo(A, col, V.basis) for col in zip(*anti)])
    if Z.dim != 2:
        raise ConstructionError("step 4", f"Z has dimension {Z.dim}")

    # (5) H1
    VV = bracket_span(A, V.basis, V.basis, 2)
    H1 = kernel_of_bracket(A, VV, V.basis, 3)
    if H1.dim != 1:
        raise ConstructionError("step 5", f"H1 has dimension {H1.dim}")
    h1 = H1.basis[0]

    # (6) U = Z + span(u, u') with [u, z1] + [u', z2] = h1 over D^1_0
    z1, z2 = Z.basis
    n = D10.dim
    cols = [b.bracket(z1).vector(2) for b in D10.basis] + [b.bracket(z2).vector(2) for b in D10.basis]
    sol = la.particular_solution(cols, h1.vector(2), A.zero)
    if sol is None:
        raise ConstructionError("step 6", "h1 is not in [D^1_0, Z]")
    rows = [[cols[i][r] for i in range(2 * n)] for r in range(len(cols[0]))]
    kerphi = la.nullspace(rows, 2 * n, A.zero, A.one)
    for kv in kerphi:
        if not (Z.contains(_combo(A, kv[:n], D10.basis)) and Z.contains(_combo(A, kv[n:], D10.basis))):
            raise ConstructionError("step 6", "the solution is not unique modulo Z")
    u = _combo(A, sol[:n], D10.basis)
    up = _combo(A, sol[n:], D10.basis)
    U = Space(A, 1, Z.basis + [u, up])
    if U.dim != 4:
        raise ConstructionError("step 6", f"U has dimension {U.dim}")

    # (7) H2
    H2 = bracket_span(A, U.basis, U.basis, 2).intersect(bracket_span(A, V.basis, Z.basis, 2))
    if H2.dim != 1:
        raise ConstructionError("step 7", f"H2 has dimension {H2.dim}")
    h2 = H2.basis[0]

    # (8) V*, H3
    Vs = kernel_of_bracket(A, V, [h2], 3)
    H3 = bracket_span(A, Vs.basis, Vs.basis, 2)
    if H3.dim != 1:
        raise ConstructionError("step 8", f"H3 has dimension {H3.dim} (V* has {Vs.dim})")
    h3 = H3.basis[0]

    # (9) U*, H4
    Us = kernel_of_bracket(A, U, [h3], 3)
    plane = H1 + H2
    H4 = bracket_span(A, V.basis, Us.basis, 2).intersect(plane)
    h4_rule = "[V, U*]"
    if H4.dim == 2:
        # [V, U*] fills the whole plane; the line comes from V* instead
        H4 = bracket_span(A, Vs.basis, Us.basis, 2).intersect(plane)
        h4_rule = "[V*, U*]"
    if H4.dim != 1:
        raise ConstructionError("step 9", f"H4 has dimension {H4.dim} (U* has {Us.dim})")
    h4 = H4.basis[0]

    g = [h1, h2]
    gv = [h1.vector(2), h2.vector(2)]
    coords = [la.solve_in_span(gv, h.vector(2), A.zero) for h in (h1, h2, h3, h4)]
    cr = cross_ratio(*coords)
    spaces = {"e1": E1, "D10": D10, "D1+": D1p, "D1-": D1m, "V": V, "Z": Z, "U": U,
              "H1": H1, "H2": H2, "V*": Vs, "H3": H3, "U*": Us, "H4": H4}
    out = FourLines(t, {k: s.dim for k, s in spaces.items()}, spaces, [h1, h2, h3, h4], g, coords, cr)
    out.h4_rule = h4_rule
    out.checks = _compare_with_named_vectors(A, t, out)
    return out


def expected_cross_ratio(t):
    return -Fraction(5, 16) * (t * t + 12) ** 3 / (t * t * (t * t - 36) ** 2)


def _compare_with_named_vectors(A, t, fl: FourLines) -> dict:
    v = _e7_l1_named_vectors(A, t)
    sp = fl.spaces
    tt = t
    checks = {}
    checks["e1 = z dz"] = sp["e1"].contains(Derivation(A, [WPoly({}, A.weights)] * 2 + [WPoly({(0, 0, 1): A.one}, A.weights)]))
    checks["Z = <z1, z2>"] = sp["Z"] == Space(A, 1, [v["z1"], v["z2"]])
    checks["V = <z1, z2, v1, v2>"] = sp["V"] == Space(A, 1, [v["z1"], v["z2"], v["v1"], v["v2"]])
    checks["U = <z1, z2, u1, u2>"] = sp["U"] == Space(A, 1, [v["z1"], v["z2"], v["u1"], v["u2"]])
    checks["V* = <v1, v2>"] = sp["V*"] == Space(A, 1, [v["v1"], v["v2"]])
    checks["H1 = <h1>"] = sp["H1"].contains(v["h1"]) and not v["h1"].is_zero()
    checks["h1 = [u2,z1] - [u1,z2]"] = v["u2"].bracket(v["z1"]) - v["u1"].bracket(v["z2"]) == v["h1"]
    h2 = v["u1"].bracket(v["u2"]).scale(Fraction(3, 2) * A.one)
    checks["h2 = [v1,z2] - [v2,z1] = (3/2)[u1,u2]"] = v["v1"].bracket(v["z2"]) - v["v2"].bracket(v["z1"]) == h2
    checks["H2 = <h2>"] = sp["H2"].contains(h2)
    fl.checks_h2_forms = {
        "polynomial form": v["h2_poly"] == h2,
        "basis form": v["h2_basis"] == h2,
    }
    h3 = v["v1"].bracket(v["v2"])
    gv = [v["h1"].vector(2), h2.vector(2)]
    c3 = la.solve_in_span(gv, h3.vector(2), A.zero)
    checks["h3 coefficients"] = c3 == [tt * (tt * tt - 36) * Fraction(4, 3), -(tt * tt + 12) / 3]
    checks["H3 = <h3>"] = sp["H3"].contains(h3)
    c4 = la.solve_in_span(gv, fl.h[3].vector(2), A.zero)
    want = (5 * (tt * tt + 12) ** 2, 4 * tt * (tt * tt - 36))
    checks["h4 direction"] = c4[0] * want[1] == c4[1] * want[0]
    fl.h_named = {"h1": v["h1"], "h2": h2, "h3": h3}
    fl.h3_coefficients = c3
    fl.h4_coefficients = c4
    return checks


def e7_identity_check() -> dict:
    """f_t(B x', gamma z') = (2 + alpha^2 t) f_s(x') with gamma^2 = 2 + alpha^2 t, for all 16 (alpha, beta)."""
    t = _t()
    out = {}
    for a in UNITS4:
        for b in UNITS4:
            lam = t * (a * a) + 2
            phi = WSubstitution.e7(B(a, b), gamma_sq=lam)
            s = pi_prime_formula(a, b).as_ratfunc()
            lhs = phi.apply(E7.f(t))
            rhs = E7.f(s).scale(lam)
            out[(a.text(), b.text())] = lhs == rhs
    return out


# ---------------------------------------------------------------------------
# E6: t-independent structure constants of L^1

E6_BASIS_PREFIX = ["x*dx + y*dy + z*dz"]
_J = ["3*x^2 + t*y*z", "3*y^2 + t*x*z", "3*z^2 + t*x*y"]
E6_U = [f"({p})*{d}" for d in ("dx", "dy", "dz") for p in _J]
E6_V_PRINTED = [
    "x^2*dx + 2*x*y*dy",
    "x^2*dx + 2*x*z*dx",
    "2*x*y*dx + y^2*dy",
    "y^2*dy + 2*y*z*dz",
    "2*y*z*dy + z^2*dz",
    "2*x*z*dx + z^2*dz",
]
E6_E12_ALTERNATIVE = "x^2*dx + 2*x*z*dz"
E6_W = ["(1/t)*x^2*dx", "(1/t)*y^2*dy", "(1/t)*z^2*dz"]
E6_TOP = ["x*y*z*dx", "x*y*z*dy", "x*y*z*dz"]

UW_TABLE = [
    [(2, 20), None, None, (2, 21), None, None, (2, 22), None, None],
    [None, (2, 20), None, None, (2, 21), None, None, (2, 22), None],
    [None, None, (2, 20), None, None, (2, 21), None, None, (2, 22)],
]
VV_TABLE = [
    [None, None, None, (4, 22), None, (-4, 21)],
    [None, None, (-4, 22), None, (4, 21), None],
    [None, (4, 22), None, None, (-4, 20), None],
    [(-4, 22), None, None, None, None, (4, 20)],
    [None, (-4, 21), (4, 20), None, None, None],
    [(4, 21), None, None, (-4, 20), None, None],
]


@dataclass
class TorelliCertificate:
    e12_reading: str
    e12_printed_valid: bool
    all_rational: bool
    uw_match: bool
    vv_match: bool
    vanishing: dict
    grading: bool
    mismatches: list
    constants: Optional[StructureConstants] = None

    @property
    def ok(self) -> bool:
        return self.all_rational and self.uw_match and self.vv_match and all(self.vanishing.values()) and self.grading


def _parse_t(A, text):
    terms = parse_expression(text, True, ("x", "y", "z", "dx", "dy", "dz"))
    comps = [dict(), dict(), dict()]
    for e, c in terms.items():
        i = e[3:].index(1)
        comps[i][e[:3]] = c if A.symbolic else c.eval(as_cyclo(A.t))
    return Derivation(A, [WPoly(c, A.weights) for c in comps])


def e6_basis(A: ModuliAlgebra, e12: Optional[str] = None) -> list[Derivation]:
    V = list(E6_V_PRINTED)
    if e12 is not None:
        V[1] = e12
    texts = E6_BASIS_PREFIX + E6_U + V + E6_W + E6_TOP
    return [_parse_t(A, s) for s in texts]


def _expected_vec(entry, n):
    if entry is None:
        return {}
    c, idx = entry
    return {idx - 1: c}


def torelli_certificate(t="symbolic") -> TorelliCertificate:
    """Structure constants of L^1(E6; t) in the explicit basis e1..e22 and the two bracket tables."""
    t = _as_param(t)
    A = build_algebra(E6, 1, t)
    L = compute_yau(A)
    printed = e6_basis(A)
    printed_ok = L.contains(printed[11]) and printed[11].degree == 1
    try:
        sc = StructureConstants(L, printed)
        reading = E6_V_PRINTED[1]
    except (ConsistencyError, ValueError):
        printed_ok = False
        sc = StructureConstants(L, e6_basis(A, E6_E12_ALTERNATIVE))
        reading = E6_E12_ALTERNATIVE
    n = 22
    mism = []

    def compare(i, j, entry, label):
        got = sc.bracket(i, j)
        want = _expected_vec(entry, n)
        for k in range(n):
            w = want.get(k, 0)
            if got[k] != w * A.one:
                mism.append((label, i + 1, j + 1))
                return False
        return True

    U = list(range(1, 10))
    V = list(range(10, 16))
    W = list(range(16, 19))
    uw = all(compare(U[jj], W[ii], UW_TABLE[ii][jj], "[U,W]") for ii in range(3) for jj in range(9))
    vv = all(compare(V[ii], V[jj], VV_TABLE[ii][jj], "[V,V]") for ii in range(6) for jj in range(6))

    def vanish(X, Y):
        return all(all(is_zero(c) for c in sc.bracket(i, j)) for i in X for j in Y)

    vanishing = {"[U,U]": vanish(U, U), "[U,V]": vanish(U, V), "[W,W]": vanish(W, W), "[V,W]": vanish(V, W)}
    grading = True
    for i in range(1, 22):
        factor = 1 if i < 19 else 2
        want = [A.zero] * n
        want[i] = factor * A.one
        if sc.bracket(0, i) != want:
            grading = False
    return TorelliCertificate(reading, printed_ok, sc.all_rational(), uw, vv, vanishing, grading, mism, sc)
