"""Groupoid morphisms between moduli algebras.

A morphism t -> s is a weighted-homogeneous substitution x = phi(x') with
phi(I_k(t)) = I_k(s).  Matrices act as x = M x', so composing t -> s -> u
multiplies matrices as M N; the induced parameter maps therefore compose in
the opposite order (pi(M N) = pi(N) o pi(M)).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Hashable, Iterable, Optional, Sequence

from . import _linalg as la
from ._mpoly import MPoly
from .modalg import ModuliAlgebra, build_algebra
from .scalar import (
    I,
    ONE,
    RHO,
    ZERO,
    Cyclo,
    MoebiusMap,
    RatFunc,
    as_cyclo,
    field_one,
    field_zero,
    is_zero,
    pdivmod,
    peval,
    pgcd,
    roots_of_unity,
)
from .wpoly import E6, E7, E8, FamilyDef, WPoly, _as_param, plain_monomials

Matrix = tuple  # tuple of row tuples


class NotInvertible(ValueError):
    pass


class GroupTooLarge(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# matrices over Q(zeta_12)

def matrix(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(as_cyclo(v) for v in r) for r in rows)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, m, p = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = ZERO
            for k in range(m):
                if not a[i][k].is_zero() and not b[k][j].is_zero():
                    acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_det(a: Matrix) -> Cyclo:
    return la.det(a, ZERO, ONE)


def mat_inv(a: Matrix) -> Matrix:
    return tuple(tuple(r) for r in la.inverse(a, ZERO, ONE))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def canonical_matrix(a: Matrix) -> Matrix:
    """Scale so that the first nonzero entry of the first row is 1."""
    for v in a[0]:
        if not v.is_zero():
            break
    else:
        raise NotInvertible("first row vanishes")
    if v == 1:
        return a
    inv = 1 / v
    return tuple(tuple(e * inv for e in r) for r in a)


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def matrix_text(a: Matrix) -> list[list[str]]:
    return [[e.text() for e in r] for r in a]


# ---------------------------------------------------------------------------
# substitutions

class WSubstitution:
    """x_j = images[j](x', y', z'), weighted homogeneous of weight w_j.

    ``gamma_sq`` is used for z -> gamma z' when only gamma^2 is known: the
    z-image must then be z' itself and every source polynomial must have
    uniform z-parity (the odd case picks up the unit gamma, which is dropped).
    """

    __slots__ = ("images", "weights", "gamma_sq", "_key")

    def __init__(self, images: Sequence[WPoly], weights: Sequence[int], gamma_sq=None):
        self.weights = tuple(weights)
        self.images = tuple(p.with_weights(self.weights) for p in images)
        for j, p in enumerate(self.images):
            if not p.is_zero() and p.degrees() != {self.weights[j]}:
                raise ValueError(f"image of variable {j} is not homogeneous of weight {self.weights[j]}")
        if gamma_sq is not None:
            if self.images[2] != WPoly.var(2, self.weights, one=_one_like(self.images[2])):
                raise ValueError("gamma_sq needs z -> z' as the recorded z-image")
            if is_zero(gamma_sq):
                raise NotInvertible("gamma^2 = 0")
        self.gamma_sq = gamma_sq
        self._key = None
        if not self.is_invertible():
            raise NotInvertible("substitution is not invertible")

    # -- constructors
    @classmethod
    def from_matrix(cls, m: Sequence[Sequence], weights=(1, 1, 1)) -> "WSubstitution":
        m = matrix(m)
        imgs = []
        for r in m:
            imgs.append(WPoly({tuple(int(i == j) for i in range(3)): v for j, v in enumerate(r)}, weights))
        return cls(imgs, weights)

    @classmethod
    def e7(cls, block: Sequence[Sequence], gamma_sq=ONE, z_extra: Optional[WPoly] = None) -> "WSubstitution":
        """(x, y) = block (x', y'), z = gamma z' (+ optional quadratic part, then gamma_sq must be None)."""
        b = matrix(block)
        w = E7.weights
        x = WPoly({(1, 0, 0): b[0][0], (0, 1, 0): b[0][1]}, w)
        y = WPoly({(1, 0, 0): b[1][0], (0, 1, 0): b[1][1]}, w)
        z = WPoly.var(2, w, one=_one_like_value(gamma_sq))
        if z_extra is not None:
            if gamma_sq is not None:
                raise ValueError("a quadratic z-part needs an explicit z-scaling, not gamma_sq")
            z = z + z_extra
        return cls((x, y, z), w, gamma_sq)

    @classmethod
    def e8(cls, a, b=ZERO, c=ONE, d=ZERO, e=ZERO, lam=ONE) -> "WSubstitution":
        """x = lam x', y = lam^2 (a y' + b x'^2), z = lam^3 c z' + d x'^3 + e x' y'."""
        w = E8.weights
        lam, a, b, c, d, e = (_scalar(v) for v in (lam, a, b, c, d, e))
        x = WPoly({(1, 0, 0): lam}, w)
        l2 = lam * lam
        y = WPoly({(0, 1, 0): l2 * a, (2, 0, 0): l2 * b}, w)
        z = WPoly({(0, 0, 1): l2 * lam * c, (3, 0, 0): d, (1, 1, 0): e}, w)
        return cls((x, y, z), w)

    @classmethod
    def identity(cls, weights=(1, 1, 1)) -> "WSubstitution":
        return cls([WPoly.var(i, weights) for i in range(3)], weights)

    # -- structure
    def linear_blocks(self) -> dict[int, list[list]]:
        """Per weight w: matrix of coefficients of weight-w target variables in weight-w images."""
        out = {}
        w = self.weights
        for wt in sorted(set(w)):
            idx = [i for i in range(3) if w[i] == wt]
            rows = []
            for i in idx:
                p = self.images[i]
                row = []
                for j in idx:
                    e = tuple(int(k == j) for k in range(3))
                    c = p.terms.get(e)
                    if i == 2 and self.gamma_sq is not None and j == 2:
                        c = self.gamma_sq
                    row.append(c if c is not None else _zero_like(p))
                rows.append(row)
            out[wt] = rows
        return out

    def is_invertible(self) -> bool:
        for rows in self.linear_blocks().values():
            one = _one_like_value(rows[0][0]) if rows else ONE
            zero = one * 0
            if is_zero(la.det(rows, zero, one)):
                return False
        return True

    def is_linear(self) -> bool:
        return all(
            all(sum(e) == 1 for e in p.terms) for p in self.images
        )

    def matrix(self) -> Matrix:
        """Coefficient matrix for linear substitutions (gamma_sq substitutions report gamma^2 in place of gamma)."""
        rows = []
        for i, p in enumerate(self.images):
            row = []
            for j in range(3):
                e = tuple(int(k == j) for k in range(3))
                c = p.terms.get(e)
                if i == 2 and j == 2 and self.gamma_sq is not None:
                    c = self.gamma_sq
                row.append(ZERO if c is None else c)
            rows.append(tuple(row))
        return tuple(rows)

    # -- action
    def apply(self, g: WPoly) -> WPoly:
        """phi(g) in the target coordinates (up to the unit gamma for odd z-parity)."""
        src = g
        if self.gamma_sq is not None:
            parities = {e[2] % 2 for e in g.terms}
            if len(parities) > 1:
                raise ValueError("mixed z-parity: gamma itself would be needed")
            terms = {}
            for e, c in g.terms.items():
                m = e[2] // 2
                terms[e] = c * self.gamma_sq ** m if m else c
            src = WPoly(terms, g.weights)
        return src.substitute(self.images)

    def compose(self, other: "WSubstitution") -> "WSubstitution":
        """self o other: x = self(x'), x' = other(x'')  (matrix product M N)."""
        if self.weights != other.weights:
            raise ValueError("weight mismatch")
        imgs = [p.substitute(other.images) for p in self.images]
        if (self.gamma_sq is None) != (other.gamma_sq is None):
            raise ValueError("cannot compose gamma_sq and explicit z-images")
        gsq = None if self.gamma_sq is None else self.gamma_sq * other.gamma_sq
        return WSubstitution(imgs, self.weights, gsq)

    def __matmul__(self, other):
        return self.compose(other)

    def canonical(self) -> "WSubstitution":
        """Normalize modulo x_j -> mu^{w_j} x_j: first nonzero coefficient of the x-image is 1."""
        x = self.images[0]
        lead = None
        for j in range(3):
            if self.weights[j] != self.weights[0]:
                continue
            c = x.terms.get(tuple(int(k == j) for k in range(3)))
            if c is not None:
                lead = c
                break
        if lead is None:
            raise NotInvertible("x-image has no linear part")
        if lead == 1:
            return self
        inv = 1 / lead
        imgs = [p.scale(inv ** self.weights[j]) for j, p in enumerate(self.images)]
        gsq = None
        if self.gamma_sq is not None:
            imgs[2] = self.images[2]
            gsq = self.gamma_sq * inv ** (2 * self.weights[2])
        return WSubstitution(imgs, self.weights, gsq)

    def key(self) -> Hashable:
        if self._key is None:
            self._key = (
                tuple(tuple(sorted(p.terms.items(), key=lambda kv: kv[0])) for p in self.images),
                self.gamma_sq,
            )
        return self._key

    def __eq__(self, other):
        return isinstance(other, WSubstitution) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def text(self) -> str:
        names = ("x", "y", "z")
        parts = []
        for j, p in enumerate(self.images):
            img = p.text().replace("x", "x'").replace("y", "y'").replace("z", "z'")
            if j == 2 and self.gamma_sq is not None:
                img = f"gamma*z' (gamma^2 = {self.gamma_sq.text()})"
            parts.append(f"{names[j]} = {img}")
        return "; ".join(parts)

    def __repr__(self):
        return f"WSubstitution({self.text()})"


def _scalar(v):
    if isinstance(v, (Cyclo, RatFunc)):
        return v
    return as_cyclo(v)


def _one_like_value(v):
    if isinstance(v, RatFunc):
        return RatFunc.const(1)
    return ONE


def _one_like(p: WPoly):
    for c in p.terms.values():
        return _one_like_value(c)
    return ONE


def _zero_like(p: WPoly):
    return _one_like(p) * 0


# ---------------------------------------------------------------------------
# morphism certificates

def algebra_for(fam: FamilyDef, k: Optional[int], t) -> ModuliAlgebra:
    """A_k(t); k=None (infinity) is truncated right above the degree of f."""
    if k is None:
        return build_algebra(fam, None, t, bound=fam.degree)
    return build_algebra(fam, k, t)


@dataclass
class MorphismCertificate:
    family: str
    k: Optional[int]
    t: object
    s: object
    substitution: WSubstitution
    witnesses: list = field(default_factory=list)
    hilbert_match: bool = False
    failure: Optional[str] = None

    @property
    def valid(self) -> bool:
        return self.failure is None and self.hilbert_match

    def __bool__(self):
        return self.valid

    def report(self) -> dict:
        return {
            "family": self.family,
            "k": "inf" if self.k is None else self.k,
            "t": _text(self.t),
            "s": _text(self.s),
            "substitution": self.substitution.text(),
            "witnesses": self.witnesses,
            "hilbert_match": self.hilbert_match,
            "valid": self.valid,
            "failure": self.failure,
        }


def _text(v):
    return v.text() if hasattr(v, "text") else str(v)


def is_morphism(phi: WSubstitution, fam: FamilyDef, k: Optional[int], t, s) -> MorphismCertificate:
    """Check phi(I_k(t)) = I_k(s): generator images vanish in A_k(s) and Hilbert functions agree."""
    t = _as_param(t)
    s = _as_param(s)
    fam.check_parameter(t)
    fam.check_parameter(s)
    if phi.weights != fam.weights:
        raise ValueError("substitution weights do not match the family")
    cert = MorphismCertificate(fam.name, k, t, s, phi)
    src = algebra_for(fam, k, t)
    dst = algebra_for(fam, k, s)
    for g in src.generators:
        img = phi.apply(g)
        nf = dst.nf_terms(img)
        if nf:
            cert.failure = f"image of generator {g.text()} reduces to {WPoly(nf, fam.weights).text()}"
            return cert
        cert.witnesses.append({"generator": g.text(), "normal_form": "0"})
    cert.hilbert_match = src.hilbert_function() == dst.hilbert_function()
    if not cert.hilbert_match:
        cert.failure = "Hilbert functions differ"
    return cert


def induced_parameter_map(phi: WSubstitution, fam: FamilyDef):
    """Solve phi(f_t) = lam * f_s; returns (MoebiusMap t -> s, lam as RatFunc) or None."""
    t = RatFunc.t()
    img = phi.apply(fam.f(t)).to_ratfunc()
    lead = fam.fixed_terms[0]
    lam = img.terms.get(lead)
    if lam is None:
        return None
    for e in fam.fixed_terms:
        if img.terms.get(e) != lam:
            return None
    for e in img.terms:
        if e not in fam.fixed_terms and e != fam.t_monomial:
            return None
    s = img.terms.get(fam.t_monomial, RatFunc.const(0)) / lam
    try:
        return MoebiusMap.from_ratfunc(s), lam
    except ValueError:
        return None


def e7_extend(block: Sequence[Sequence], t="symbolic") -> Optional[WSubstitution]:
    """Extend a 2x2 block by the z-scaling gamma^2 = lam forced by phi(f_t) = lam f_s."""
    t = _as_param(t)
    probe = WSubstitution.e7(block)
    img = probe.apply(E7.f(t).with_weights(E7.weights))
    lam = img.terms.get((4, 0, 0))
    if lam is None or is_zero(lam):
        return None
    return WSubstitution.e7(block, gamma_sq=lam)


# ---------------------------------------------------------------------------
# finite groups

def closure(generators: Sequence, mul: Callable, cap: int = 10000) -> list:
    """Breadth-first closure of a set of canonical elements under ``mul``."""
    gens = list(dict.fromkeys(generators))
    seen = dict.fromkeys(gens)
    frontier = list(gens)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                for c in (mul(a, g), mul(g, a)):
                    if c not in seen:
                        seen[c] = None
                        nxt.append(c)
                        if len(seen) > cap:
                            raise GroupTooLarge(f"closure exceeds {cap} elements")
        frontier = nxt
    return list(seen)


class MatrixGroup:
    """Finite subgroup of PGL_n given by canonical-form matrices."""

    def __init__(self, generators: Sequence[Matrix], cap: int = 10000):
        gens = [canonical_matrix(matrix(g)) for g in generators]
        n = len(gens[0])
        self.n = n
        self.identity = identity_matrix(n)
        self.generators = gens
        els = closure(gens + [self.identity], self.mul, cap)
        self.elements = sorted(els, key=_matrix_sort_key)
        self.index = {g: i for i, g in enumerate(self.elements)}

    @staticmethod
    def mul(a: Matrix, b: Matrix) -> Matrix:
        return canonical_matrix(mat_mul(a, b))

    def __len__(self):
        return len(self.elements)

    def __contains__(self, m):
        return canonical_matrix(matrix(m)) in self.index

    def order_of(self, g: Matrix) -> int:
        h, n = g, 1
        while h != self.identity:
            h = self.mul(h, g)
            n += 1
        return n

    def order_profile(self) -> dict[int, int]:
        prof: dict[int, int] = {}
        for g in self.elements:
            o = self.order_of(g)
            prof[o] = prof.get(o, 0) + 1
        return dict(sorted(prof.items()))

    def inverse(self, g: Matrix) -> Matrix:
        return canonical_matrix(mat_inv(g))

    def entries(self) -> set:
        return {e for g in self.elements for r in g for e in r}


def _matrix_sort_key(m: Matrix):
    return tuple(e.sort_key() for r in m for e in r)


def moebius_group(generators: Sequence[MoebiusMap], cap: int = 1000) -> list[MoebiusMap]:
    return closure(list(generators) + [MoebiusMap.identity()], lambda a, b: a.compose(b), cap)


def order_profile(elements: Sequence[MoebiusMap]) -> dict[int, int]:
    prof: dict[int, int] = {}
    for g in elements:
        o = g.order()
        prof[o] = prof.get(o, 0) + 1
    return dict(sorted(prof.items()))


# the named generators
A1 = matrix([[RHO, 0, 0], [0, 1, 0], [0, 0, 1]])
A2 = matrix([[RHO, RHO * RHO, 1], [RHO * RHO, RHO, 1], [1, 1, 1]])
A3 = matrix([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
A4 = matrix([[1, 0, 0], [0, 0, 1], [0, 1, 0]])
P_MAP = MoebiusMap(RHO, 0, 0, 1)
R_MAP = MoebiusMap(-3, 18, 1, 3)

GP_GENERATORS = (
    matrix([[1, 1], [I, -I]]),
    matrix([[1, 0], [0, I]]),
    matrix([[0, 1], [1, 0]]),
)
UNITS4 = (ONE, -ONE, I, -I)


def B(alpha, beta) -> Matrix:
    """The 2x2 blocks B_{alpha,0}, B_{0,beta}, B_{alpha,beta}."""
    alpha, beta = as_cyclo(alpha), as_cyclo(beta)
    if beta.is_zero():
        return matrix([[1, 0], [0, alpha]])
    if alpha.is_zero():
        return matrix([[0, beta], [1, 0]])
    return matrix([[1, beta], [alpha, -alpha * beta]])


def pi_prime_formula(alpha, beta) -> MoebiusMap:
    """t -> beta^2 (12 - 2 alpha^2 t)/(2 + alpha^2 t), and t -> alpha^2 t on the sparse blocks."""
    alpha, beta = as_cyclo(alpha), as_cyclo(beta)
    if beta.is_zero():
        return MoebiusMap(alpha * alpha, 0, 0, 1)
    if alpha.is_zero():
        return MoebiusMap(beta * beta, 0, 0, 1)
    a2, b2 = alpha * alpha, beta * beta
    return MoebiusMap(-2 * a2 * b2, 12 * b2, a2, 2)


def group_G() -> MatrixGroup:
    return MatrixGroup([A1, A2, A3, A4])


def group_G_prime() -> MatrixGroup:
    return MatrixGroup(GP_GENERATORS)


def group_H() -> list[MoebiusMap]:
    return moebius_group([P_MAP, R_MAP])


def group_H_prime() -> list[MoebiusMap]:
    maps = []
    for sgn in (1, -1):
        maps.append(MoebiusMap(sgn, 0, 0, 1))
        maps.append(MoebiusMap(-2 * sgn, 12 * sgn, 1, 2))
        maps.append(MoebiusMap(2 * sgn, 12 * sgn, -1, 2))
    return maps


def G_prime_listing() -> list[Matrix]:
    """The 24 blocks B_{alpha,0}, B_{0,beta}, B_{alpha,beta} in canonical form."""
    out = [B(a, 0) for a in UNITS4] + [B(0, b) for b in UNITS4]
    out += [B(a, b) for a in UNITS4 for b in UNITS4]
    return [canonical_matrix(m) for m in out]


def substitution_of(m: Matrix, fam: FamilyDef, t="symbolic") -> Optional[WSubstitution]:
    if fam is E7:
        return e7_extend(m, t)
    if len(m) != 3:
        raise ValueError("need a 3x3 matrix")
    return WSubstitution.from_matrix(m, fam.weights)


@dataclass
class HomomorphismReport:
    images: dict  # element -> MoebiusMap
    image: list
    kernel: list
    anti: bool
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_homomorphism_pi(group: MatrixGroup, fam: FamilyDef) -> HomomorphismReport:
    """Induced parameter maps on all elements; checks pi(g h) = pi(h) o pi(g) on all pairs."""
    images = {}
    fails = []
    for g in group.elements:
        sub = substitution_of(g, fam)
        r = None if sub is None else induced_parameter_map(sub, fam)
        if r is None:
            fails.append(("no parameter map", g))
            continue
        images[g] = r[0]
    if not fails:
        for g in group.elements:
            for h in group.elements:
                gh = group.mul(g, h)
                if images[gh] != images[h].compose(images[g]):
                    fails.append(("product", g, h))
                    break
            if fails:
                break
    ident = MoebiusMap.identity()
    image = list(dict.fromkeys(images.values()))
    kernel = [g for g, m in images.items() if m == ident]
    return HomomorphismReport(images, image, kernel, True, fails)


def word_parameter_map(word: Sequence[int]) -> MoebiusMap:
    """pi of A_{i1} A_{i2} ... via the anti-homomorphism rule and pi(A1..A4) = P, R, Id, Id."""
    table = {1: P_MAP, 2: R_MAP, 3: MoebiusMap.identity(), 4: MoebiusMap.identity()}
    m = MoebiusMap.identity()
    for i in word:
        m = table[i].compose(m)
    return m


def generator_words(group: MatrixGroup) -> dict:
    """A shortest word in the generators for every element (BFS)."""
    words = {group.identity: ()}
    frontier = [group.identity]
    while frontier:
        nxt = []
        for g in frontier:
            for i, a in enumerate(group.generators, start=1):
                h = group.mul(g, a)
                if h not in words:
                    words[h] = words[g] + (i,)
                    nxt.append(h)
        frontier = nxt
    return words


# ---------------------------------------------------------------------------
# E6 classification

SPARSE_PATTERNS = {
    "I": (0, 1, 2),
    "II": (0, 2, 1),
    "III": (1, 0, 2),
    "IV": (1, 2, 0),
    "V": (2, 0, 1),
    "VI": (2, 1, 0),
}


def _perm_matrix(cols, lams) -> Matrix:
    return tuple(tuple(lams[i] if j == cols[i] else ZERO for j in range(3)) for i in range(3))


def e6_sparse_solutions(units: Sequence[Cyclo] = None) -> dict[str, list[Matrix]]:
    """Types I-VI with lam_1 normalized to 1 and lam_1^3 = lam_2^3 = lam_3^3."""
    units = roots_of_unity(12) if units is None else units
    out = {}
    for name, cols in SPARSE_PATTERNS.items():
        found = []
        for l2, l3 in product(units, repeat=2):
            if l2 ** 3 == 1 and l3 ** 3 == 1:
                found.append(_perm_matrix(cols, (ONE, l2, l3)))
        out[name] = found
    return out


def e6_dense_solutions() -> list[Matrix]:
    """Dense matrices with entries in {1, rho, rho^2}, a_1 = 1, equal row and column products."""
    vals = (ONE, RHO, RHO * RHO)
    out = []
    for rest in product(vals, repeat=8):
        m = (ONE,) + rest
        a = (m[0:3], m[3:6], m[6:9])
        rows = [r[0] * r[1] * r[2] for r in a]
        if not (rows[0] == rows[1] == rows[2]):
            continue
        cols = [a[0][j] * a[1][j] * a[2][j] for j in range(3)]
        if not (cols[0] == cols[1] == cols[2]):
            continue
        if mat_det(a).is_zero():
            continue
        out.append(tuple(tuple(r) for r in a))
    return out


def f_e6(t, v: Sequence) -> object:
    x, y, z = v
    return x ** 3 + y ** 3 + z ** 3 + t * x * y * z


def e6_inverse_relation_holds(m: Matrix, s) -> bool:
    """First column of M^-1 against (a_1^2 - (6/s) a_2 a_3)/f_{-18/s}(a_1, a_2, a_3) and cyclic analogues."""
    s = as_cyclo(s)
    a1, a2, a3 = m[0]
    inv = mat_inv(m)
    den = f_e6(-18 / s, (a1, a2, a3))
    if den.is_zero():
        return False
    k = 6 / s
    want = ((a1 * a1 - k * a2 * a3) / den, (a2 * a2 - k * a1 * a3) / den, (a3 * a3 - k * a1 * a2) / den)
    got = (inv[0][0], inv[1][0], inv[2][0])
    return want == got


def e6_row_invariant_equal(m: Matrix, s) -> bool:
    s = as_cyclo(s)
    vals = [f_e6(-18 / s, r) for r in m]
    return vals[0] == vals[1] == vals[2]


@dataclass
class E6Classification:
    sparse: dict
    dense: list
    group_size: int
    union_equals_group: bool
    morphism_checks: list
    failures: list

    @property
    def counts(self) -> tuple[int, int]:
        return sum(len(v) for v in self.sparse.values()), len(self.dense)

    @property
    def ok(self) -> bool:
        return not self.failures and self.union_equals_group and self.counts == (54, 162)


def verify_E6_classification(samples: Sequence, k: int = 1, check_relations: bool = True) -> E6Classification:
    """Enumerate types I-VI and the dense case, compare with G and verify every element as a morphism."""
    G = group_G()
    hom = verify_homomorphism_pi(G, E6)
    sparse = e6_sparse_solutions()
    dense = e6_dense_solutions()
    union = {m for v in sparse.values() for m in v} | set(dense)
    fails = list(hom.failures)
    checks = []
    for t in samples:
        t = as_cyclo(t)
        if E6.is_jump(t) or E6.is_excluded(t):
            raise ValueError(f"t = {t.text()} must be a non-jump parameter")
        ok = 0
        for g in sorted(union, key=_matrix_sort_key):
            s = hom.images[g](t)
            cert = is_morphism(WSubstitution.from_matrix(g), E6, k, t, s)
            if not cert.valid:
                fails.append(("not a morphism", t.text(), matrix_text(g), cert.failure))
                continue
            if check_relations and not (e6_row_invariant_equal(g, s) and e6_inverse_relation_holds(g, s)):
                fails.append(("relations", t.text(), matrix_text(g)))
                continue
            ok += 1
        checks.append({"t": t.text(), "verified": ok})
    return E6Classification(sparse, dense, len(G), union == set(G.elements), checks, fails)


# ---------------------------------------------------------------------------
# E8: solving for all weighted substitutions

E8_UNKNOWNS = ("a", "b", "c", "d", "e", "t")
_A, _B, _C, _D, _E, _T = range(6)
_UNITS = (_A, _C)
FREE = "free"


class SolverError(RuntimeError):
    pass


def _e8_equations(k: Optional[int], S, t_value=None) -> tuple[list, ModuliAlgebra]:
    """Normal-form coefficients of phi(g) in A_k(S) for the generators g of I_k(t).

    phi is x = x', y = a y' + b x'^2, z = c z' + d x'^3 + e x' y'; the source
    parameter t is an unknown unless ``t_value`` is given.
    """
    one = field_one(S)
    w = E8.weights

    def v(i):
        return MPoly.var(i, 6, one)

    T = v(_T) if t_value is None else MPoly.const(one * as_cyclo(t_value), 6)
    c1 = MPoly.const(one, 6)
    f = WPoly({(6, 0, 0): c1, (0, 3, 0): c1, (0, 0, 2): c1, (4, 1, 0): T}, w)
    gens = [f]
    if k is not None:
        J = [f.deriv(i) for i in range(3)]
        for mu in plain_monomials(k):
            gens.extend(g.mul_monomial(mu) for g in J)
    images = (
        WPoly({(1, 0, 0): c1}, w),
        WPoly({(0, 1, 0): v(_A), (2, 0, 0): v(_B)}, w),
        WPoly({(0, 0, 1): v(_C), (3, 0, 0): v(_D), (1, 1, 0): v(_E)}, w),
    )
    target = algebra_for(E8, k, S)
    eqs = []
    for g in gens:
        eqs.extend(target.nf_terms(g.substitute(images)).values())
    return eqs, target


def _coefficient_polys(eqs: Iterable[MPoly]) -> list[tuple]:
    polys = []
    for eq in eqs:
        for c in eq.coefficients():
            if isinstance(c, RatFunc):
                polys.extend([c.num, c.den])
    return polys


def _param_candidates(polys: Iterable[tuple], fam: FamilyDef) -> set:
    """Roots of parameter polynomials we can certify: linear factors, rational roots, 0 and jump points."""
    out = set()
    probes = {ZERO, *fam.jump_points}
    for p in polys:
        if len(p) <= 1:
            continue
        if len(p) == 2:
            out.add(-p[0] / p[1])
            continue
        for q in probes | _rational_roots(p):
            if peval(p, q).is_zero():
                out.add(q)
    return {s for s in out if not fam.is_excluded(s)}


def _rational_roots(p: tuple) -> set:
    from fractions import Fraction
    from math import lcm

    if not all(c.is_rational() for c in p):
        return set()
    fr = [c.to_fraction() for c in p]
    while fr and fr[0] == 0:
        fr = fr[1:]
    if len(fr) < 2:
        return set()
    m = lcm(*(q.denominator for q in fr))
    ints = [int(q * m) for q in fr]
    lo, hi = abs(ints[0]), abs(ints[-1])
    if lo > 10 ** 6 or hi > 10 ** 6:
        return set()
    num = [d for d in range(1, lo + 1) if lo % d == 0]
    den = [d for d in range(1, hi + 1) if hi % d == 0]
    return {as_cyclo(sg * Fraction(n, d)) for n in num for d in den for sg in (1, -1)}


def _unit_roots(poly: tuple) -> Optional[list]:
    """Roots of a univariate polynomial (unit variable): strips x^m, finds roots in mu_12.

    Returns None when a factor without roots of unity remains.
    """
    p = list(poly)
    while p and is_zero(p[0]):
        p.pop(0)
    p = tuple(p)
    roots = []
    for r in roots_of_unity(12):
        while len(p) > 1 and is_zero(peval(p, r)):
            p = pdivmod(p, (-r * field_one(p[0]), field_one(p[0])))[0]
            if r not in roots:
                roots.append(r)
    if len(p) > 1:
        return None
    return roots


@dataclass
class E8Branch:
    """One family of solutions; values map unknown names to Cyclo constants or FREE."""

    values: dict
    t: object  # RatFunc in S (symbolic run), Cyclo, or FREE
    s: object = None  # target parameter (RatFunc in S or Cyclo)

    def s_map(self) -> Optional[MoebiusMap]:
        """t -> s for a generic symbolic branch."""
        if isinstance(self.t, RatFunc) and not self.t.is_const():
            return MoebiusMap.from_ratfunc(self.t).inverse()
        return None

    def text(self) -> str:
        vals = ", ".join(f"{k}={_text(v)}" for k, v in self.values.items())
        m = self.s_map()
        if m is not None:
            return f"{m.text()}: {vals}"
        return f"t={_text(self.t)}, s={_text(self.s)}: {vals}"


def _solve_system(eqs: list, S, specials: set) -> list[E8Branch]:
    stack = [(list(eqs), {})]
    done = []
    while stack:
        eqs, assign = stack.pop()
        eqs = [q for q in eqs if not q.is_zero()]
        progressed = True
        dead = False
        while progressed and not dead:
            progressed = False
            for q in eqs:
                if len(q.terms) != 1:
                    continue
                (e, c), = q.terms.items()
                nonunit = [i for i in (_B, _D, _E, _T) if e[i]]
                if not nonunit:
                    specials |= _param_candidates(_coefficient_polys([q]), E8)
                    dead = True
                    break
                if len(nonunit) > 1:
                    # one of the factors vanishes: branch
                    for i in nonunit:
                        nxt = {j: (x.subs(i, 0) if isinstance(x, MPoly) else x) for j, x in assign.items()}
                        nxt[i] = 0
                        stack.append(([r.subs(i, 0) for r in eqs], nxt))
                    dead = True
                    break
                i = nonunit[0]
                assign = {j: (x.subs(i, 0) if isinstance(x, MPoly) else x) for j, x in assign.items()}
                assign[i] = 0
                eqs = [r.subs(i, 0) for r in eqs]
                eqs = [r for r in eqs if not r.is_zero()]
                progressed = True
                break
            if dead or progressed:
                continue
            for q in eqs:
                parts = q.split(_T)
                if set(parts) == {0, 1} and parts[1].variables() == set():
                    (kappa,) = parts[1].coefficients()
                    specials |= _param_candidates(_coefficient_polys([parts[1]]), E8)
                    expr = parts[0] * (-1 / kappa)
                    assign[_T] = expr
                    eqs = [r.subs(_T, expr) for r in eqs]
                    eqs = [r for r in eqs if not r.is_zero()]
                    progressed = True
                    break
        if dead:
            continue
        for q in eqs:
            if not q.variables():
                specials |= _param_candidates(_coefficient_polys([q]), E8)
                dead = True
        if dead:
            continue
        if not eqs:
            done.append(assign)
            continue
        for var in (_A, _C):
            pure = [q for q in eqs if q.variables() == {var}]
            if not pure:
                continue
            g = None
            for q in pure:
                p = q.univariate(var)
                specials |= _param_candidates(_coefficient_polys([q]), E8)
                g = p if g is None else pgcd(g, p)
            roots = _unit_roots(g)
            if roots is None:
                raise SolverError(f"roots of {E8_UNKNOWNS[var]} lie outside Q(zeta_12)")
            for r in roots:
                nxt = {i: (x.subs(var, r) if isinstance(x, MPoly) else x) for i, x in assign.items()}
                nxt[var] = r
                stack.append(([q.subs(var, r) for q in eqs], nxt))
            break
        else:
            raise SolverError("mixed equations: " + "; ".join(q.text(E8_UNKNOWNS) for q in eqs))
    branches = []
    seen = set()
    for assign in done:
        vals = {}
        for i in (_A, _B, _C, _D, _E):
            v = assign.get(i, FREE)
            vals[E8_UNKNOWNS[i]] = as_cyclo(v) if v != FREE else FREE
        t = assign.get(_T, FREE)
        if isinstance(t, MPoly):
            if t.variables():
                raise SolverError("source parameter depends on a free unknown")
            t = t.terms.get((0,) * 6, field_zero(S))
        key = (tuple(vals.items()), t)
        if key not in seen:
            seen.add(key)
            branches.append(E8Branch(vals, t, S))
    return branches


@dataclass
class E8Solution:
    k: Optional[int]
    generic: list  # branches over Q(S), t a function of S
    special: dict  # S0 -> branches with t solved at S = S0
    t: object = None
    morphisms: list = field(default_factory=list)  # numeric runs: (s0, branch, certificate)

    def report(self) -> dict:
        out = {
            "k": "inf" if self.k is None else self.k,
            "generic": [b.text() for b in self.generic],
            "special": {_text(s0): [b.text() for b in bs] for s0, bs in self.special.items()},
        }
        if self.t is not None:
            out["t"] = _text(self.t)
            out["morphisms"] = [
                {"s": _text(s0), "branch": b.text(), "valid": cert} for s0, b, cert in self.morphisms
            ]
        return out


_E8_CACHE: dict = {}


def _solve_e8_symbolic(k: Optional[int]) -> E8Solution:
    if k in _E8_CACHE:
        return _E8_CACHE[k]
    S = RatFunc.t()
    eqs, target = _e8_equations(k, S)
    specials = _param_candidates(_coefficient_polys(eqs) + list(target.pivot_factors()), E8)
    specials |= {s for s in (ZERO, *E8.jump_points) if not E8.is_excluded(s)}
    generic = _solve_system(eqs, S, specials)
    special = {}
    for s0 in sorted(specials, key=lambda v: v.sort_key()):
        eqs0, _ = _e8_equations(k, s0)
        special[s0] = _solve_system(eqs0, s0, set())
    sol = E8Solution(k, generic, special)
    _E8_CACHE[k] = sol
    return sol


def _e8_sample_values(v, samples=(ONE, Cyclo(2), I + 3)):
    return samples if v == FREE else (v,)


def solve_E8_morphisms(k: Optional[int], t="symbolic") -> E8Solution:
    """All substitutions x = x', y = a y' + b x'^2, z = c z' + d x'^3 + e x'y' between E8 algebras.

    Symbolic ``t`` returns the generic branches over Q(s) together with the
    branches at the finitely many special target values.  A numeric ``t``
    additionally lists the concrete morphisms out of t, each verified exactly
    (free unknowns are tested at a few sample values).
    """
    sol = _solve_e8_symbolic(k)
    t = _as_param(t)
    if isinstance(t, RatFunc) and not t.is_const():
        return sol
    t0 = as_cyclo(t)
    E8.check_parameter(t0)
    found = []
    for b in sol.generic:
        m = b.s_map()
        if m is None:
            continue
        try:
            s0 = m(t0)
        except ZeroDivisionError:
            continue
        if s0 in sol.special or E8.is_excluded(s0):
            continue
        found.append((s0, E8Branch(dict(b.values), t0, s0)))
    for s0, bs in sol.special.items():
        for b in bs:
            if b.t != FREE and as_cyclo(b.t) != t0:
                continue
            found.append((s0, E8Branch(dict(b.values), t0, s0)))
    out = E8Solution(k, sol.generic, sol.special, t0)
    for s0, b in found:
        ok = True
        vals = b.values
        for a, bb, c, d, e in product(*(_e8_sample_values(vals[n]) for n in "abcde")):
            phi = WSubstitution.e8(a, bb, c, d, e)
            if not is_morphism(phi, E8, k, t0, s0).valid:
                ok = False
                break
        out.morphisms.append((s0, b, ok))
    return out


def e8_expected_branches(k: Optional[int], t0) -> set:
    """(s, a, c) triples predicted by the diagonal maps x = x', y = rho^i y', z = gamma z'."""
    t0 = as_cyclo(t0)
    cube = roots_of_unity(3)
    if k is not None and k <= 1:
        if t0.is_zero():
            return {(ZERO, FREE, FREE)}
        return {(r * t0, r, FREE) for r in cube}
    return {(r * t0, r, ONE) for r in cube}


def e8_found_branches(sol: E8Solution) -> set:
    return {(s0, b.values["a"], b.values["c"]) for s0, b, ok in sol.morphisms if ok}


# ---------------------------------------------------------------------------
# brute force over entries {0} and mu_12

def _exact_canonical(idx) -> Matrix:
    from ._search import to_exact

    return canonical_matrix(to_exact(idx))


def brute_force_morphisms(fam: FamilyDef, k: Optional[int], t, s, seed: int = 0, mode: Optional[str] = None) -> list:
    """All morphisms t -> s with entries in {0} and mu_12, each verified exactly.

    E6 returns canonical 3x3 matrices.  E7 returns pairs (block, gamma_sq)
    with gamma_sq a Cyclo or FREE; only z = gamma z' is searched there.
    """
    import numpy as np

    from . import _search

    t, s = as_cyclo(_as_param(t)), as_cyclo(_as_param(s))
    rng = np.random.default_rng(seed)
    src, dst = algebra_for(fam, k, t), algebra_for(fam, k, s)
    if src.hilbert_function() != dst.hilbert_function():
        return []
    if fam is E6:
        if mode is None:
            mode = "rows" if k is not None and k <= 1 else "columns"
        search = _search.row_search if mode == "rows" else _search.column_search
        cands = _search.full_filter(search(src, dst, rng), src, dst, rng)
        found = []
        for m in dict.fromkeys(_exact_canonical(c) for c in cands):
            if is_morphism(WSubstitution.from_matrix(m), fam, k, t, s).valid:
                found.append(m)
        return sorted(found, key=_matrix_sort_key)
    if fam is E7:
        found = []
        for b in _search.e7_block_filter(src, dst, rng):
            block = canonical_matrix(_search.to_exact(b))
            for gsq in e7_gamma_solutions(block, k, t, s):
                found.append((block, gsq))
        return found
    raise ValueError("brute force is available for E6 and E7")


def e7_gamma_solutions(block: Matrix, k: Optional[int], t, s) -> list:
    """gamma^2 values making (x, y) = block (x', y'), z = gamma z' a morphism t -> s.

    Returns [FREE] when every nonzero gamma works, [] when none does.
    """
    u = RatFunc.t()  # stands for gamma^2
    try:
        probe = WSubstitution.e7(block, gamma_sq=u)
    except NotInvertible:
        return []
    src, dst = algebra_for(E7, k, t), algebra_for(E7, k, s)
    if src.hilbert_function() != dst.hilbert_function():
        return []
    g = ()
    for gen in src.generators:
        for c in dst.nf_terms(probe.apply(gen)).values():
            g = pgcd(g, c.num) if g else c.num
    if not g:
        candidates = [FREE]
    else:
        p = list(g)
        while p and p[0].is_zero():
            p.pop(0)
        if len(p) == 1:
            return []
        if len(p) != 2:
            raise SolverError("gamma^2 satisfies a nonlinear condition")
        candidates = [-p[0] / p[1]]
    out = []
    for c in candidates:
        tests = (ONE, Cyclo(2)) if c == FREE else (c,)
        if all(is_morphism(WSubstitution.e7(block, gamma_sq=v), E7, k, t, s).valid for v in tests):
            out.append(c)
    return out


@dataclass
class ChainReport:
    t: object
    s: object
    sets: dict  # k -> frozenset of canonical matrices
    inclusions: dict
    stable: bool

    @property
    def ok(self) -> bool:
        return all(self.inclusions.values()) and self.stable

    def report(self) -> dict:
        return {
            "t": _text(self.t),
            "s": _text(self.s),
            "sizes": {("inf" if k is None else k): len(v) for k, v in self.sets.items()},
            "inclusions": self.inclusions,
            "stable": self.stable,
        }


def groupoid_chain(t, s, seed: int = 0) -> ChainReport:
    """Mor^inf in Mor^0 in Mor^1 and Mor^2 = Mor^3 = Mor^inf for E6, by brute force."""
    sets = {k: frozenset(brute_force_morphisms(E6, k, t, s, seed)) for k in (None, 0, 1, 2, 3)}
    inc = {
        "inf<=0": sets[None] <= sets[0],
        "0<=1": sets[0] <= sets[1],
    }
    stable = sets[2] == sets[3] == sets[None]
    return ChainReport(as_cyclo(t), as_cyclo(s), sets, inc, stable)


def transpose_duality(g: Matrix, t, s) -> MorphismCertificate:
    """g: t -> s (any k) gives g^T: -18/s -> -18/t as a k = infinity morphism."""
    t, s = as_cyclo(t), as_cyclo(s)
    return is_morphism(WSubstitution.from_matrix(transpose(g)), E6, None, -18 / s, -18 / t)


def grp00_report(seed: int = 0) -> dict:
    """Automorphisms of A^0 at t = 0 found by brute force (reported, not asserted)."""
    G0 = brute_force_morphisms(E6, 0, 0, 0, seed)
    return {"count": len(G0), "in_G": sum(1 for g in G0 if g in set(group_G().elements))}
