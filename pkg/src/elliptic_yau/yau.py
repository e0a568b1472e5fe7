"""Derivation Lie algebras L^k = Der(A^k, A^k) of the moduli algebras."""
from __future__ import annotations

from typing import Optional, Sequence

from . import _linalg as la
from .modalg import ModuliAlgebra
from .scalar import RatFunc, is_zero
from .wpoly import WPoly, parse_expression, wdeg

DVARS = ("dx", "dy", "dz")


class ConsistencyError(RuntimeError):
    """An internal invariant (ideal preservation, span membership, ...) failed."""


def coordinate_index(A: ModuliAlgebra, degree: int) -> list[tuple[int, tuple]]:
    """Ambient coordinates (i, m) of degree-`degree` derivations: m d/dx_i with m standard."""
    w = A.weights
    out = []
    for i in range(3):
        for m in A.standard_in_degree(degree + w[i]):
            out.append((i, m))
    return out


class Derivation:
    """a_x d/dx + a_y d/dy + a_z d/dz with components reduced modulo the ideal."""

    __slots__ = ("algebra", "coeffs", "degree")

    def __init__(self, A: ModuliAlgebra, comps: Sequence[WPoly], reduce: bool = True):
        self.algebra = A
        if len(comps) != 3:
            raise ValueError("a derivation has three components")
        comps = tuple(A.reduce(c) if reduce else c for c in comps)
        self.coeffs = comps
        degs = set()
        for i, c in enumerate(comps):
            for e in c.terms:
                degs.add(wdeg(e, A.weights) - A.weights[i])
        if len(degs) > 1:
            raise ValueError(f"derivation is not homogeneous (degrees {sorted(degs)})")
        self.degree = degs.pop() if degs else None

    @classmethod
    def zero(cls, A: ModuliAlgebra) -> "Derivation":
        z = WPoly({}, A.weights)
        return cls(A, (z, z, z), reduce=False)

    @classmethod
    def from_vector(cls, A: ModuliAlgebra, degree: int, vec: Sequence) -> "Derivation":
        comps = [dict(), dict(), dict()]
        for (i, m), c in zip(coordinate_index(A, degree), vec):
            if not is_zero(c):
                comps[i][m] = c
        return cls(A, [WPoly(c, A.weights) for c in comps], reduce=False)

    @classmethod
    def parse(cls, A: ModuliAlgebra, text: str) -> "Derivation":
        """Parse e.g. ``x^2*dx + 2*x*y*dy`` (linear in dx, dy, dz)."""
        terms = parse_expression(text, True, ("x", "y", "z") + DVARS)
        comps = [dict(), dict(), dict()]
        for e, c in terms.items():
            d = e[3:]
            if sum(d) != 1:
                raise ValueError(f"{text!r} is not linear in dx, dy, dz")
            i = d.index(1)
            comps[i][e[:3]] = c if A.symbolic else _const(c)
        return cls(A, [WPoly(c, A.weights) for c in comps])

    # -- basic algebra
    def _same(self, other: "Derivation"):
        if other.algebra is not self.algebra:
            raise ValueError("derivations live on different algebras")

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __add__(self, other):
        self._same(other)
        return Derivation(self.algebra, [a + b for a, b in zip(self.coeffs, other.coeffs)], reduce=False)

    def __sub__(self, other):
        self._same(other)
        return Derivation(self.algebra, [a - b for a, b in zip(self.coeffs, other.coeffs)], reduce=False)

    def __neg__(self):
        return Derivation(self.algebra, [-a for a in self.coeffs], reduce=False)

    def scale(self, c) -> "Derivation":
        return Derivation(self.algebra, [a.scale(c) for a in self.coeffs], reduce=False)

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.algebra is other.algebra and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs))

    # -- action
    def apply(self, p: WPoly) -> WPoly:
        """delta(p) modulo the ideal."""
        acc = WPoly({}, self.algebra.weights)
        for i, a in enumerate(self.coeffs):
            if not a.is_zero():
                dp = p.deriv(i)
                if not dp.is_zero():
                    acc = acc + a * dp
        return self.algebra.reduce(acc)

    def preserves_ideal(self) -> bool:
        return all(self.apply(g).is_zero() for g in self.algebra.generators)

    def bracket(self, other: "Derivation") -> "Derivation":
        self._same(other)
        A = self.algebra
        comps = []
        for l in range(3):
            acc = WPoly({}, A.weights)
            for i in range(3):
                a_i, b_i = self.coeffs[i], other.coeffs[i]
                if not a_i.is_zero():
                    db = other.coeffs[l].deriv(i)
                    if not db.is_zero():
                        acc = acc + a_i * db
                if not b_i.is_zero():
                    da = self.coeffs[l].deriv(i)
                    if not da.is_zero():
                        acc = acc - b_i * da
            comps.append(acc)
        return Derivation(A, comps)

    def vector(self, degree: Optional[int] = None) -> list:
        A = self.algebra
        degree = self.degree if degree is None else degree
        if degree is None:
            raise ValueError("the zero derivation needs an explicit degree")
        if self.degree is not None and self.degree != degree:
            raise ValueError("degree mismatch")
        return [self.coeffs[i].terms.get(m, A.zero) for i, m in coordinate_index(A, degree)]

    # -- text
    def text(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                parts.append(f"({c.text()})*{DVARS[i]}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"Derivation({self.text()})"


def _const(c):
    if isinstance(c, RatFunc):
        return c.const_value()
    return c


def module_action(g: WPoly, u: Derivation) -> Derivation:
    """g . u = sum (g a_i) d/dx_i, checked to preserve the ideal again."""
    A = u.algebra
    v = Derivation(A, [A.reduce(g * a) for a in u.coeffs])
    if not v.preserves_ideal():
        raise ConsistencyError(f"{g.text()} . ({u.text()}) does not preserve the ideal")
    return v


class YauAlgebra:
    """Graded Lie algebra of derivations with a fixed echelon basis per degree."""

    def __init__(self, A: ModuliAlgebra):
        self.ambient = A
        self.by_degree: dict[int, list[Derivation]] = {}
        self._solve()
        self.basis: list[Derivation] = [d for deg in sorted(self.by_degree) for d in self.by_degree[deg]]
        self._echelon: dict[int, tuple] = {}

    def _solve(self):
        A = self.ambient
        w = A.weights
        lo = -max(w)
        hi = A.truncation - 1 - min(w)
        dgens = [[g.deriv(i) for i in range(3)] for g in A.generators]
        for d in range(lo, hi + 1):
            unknowns = coordinate_index(A, d)
            if not unknowns:
                continue
            cols = []
            for i, m in unknowns:
                col = {}
                for gi, dg in enumerate(dgens):
                    if dg[i].is_zero():
                        continue
                    nf = A.nf_terms(dg[i].mul_monomial(m))
                    for e, c in nf.items():
                        col[(gi, e)] = c
                cols.append(col)
            keys = sorted({k for col in cols for k in col})
            rows = [[col.get(k, A.zero) for col in cols] for k in keys]
            kernel = la.nullspace(rows, len(unknowns), A.zero, A.one)
            # present the kernel in reduced echelon form for determinism
            if kernel:
                kernel = la.rref(kernel)[0]
                self.by_degree[d] = [Derivation.from_vector(A, d, v) for v in kernel]

    # -- queries
    @property
    def dim(self) -> int:
        return len(self.basis)

    def degree_profile(self) -> dict[int, int]:
        return {d: len(v) for d, v in sorted(self.by_degree.items())}

    def slice(self, d: int) -> list[Derivation]:
        return list(self.by_degree.get(d, []))

    def contains(self, u: Derivation) -> bool:
        if u.is_zero():
            return True
        return self.coordinates(u) is not None

    def coordinates(self, u: Derivation) -> Optional[list]:
        """Coordinates of u in the computed basis of its degree (None when outside)."""
        A = self.ambient
        if u.degree is None:
            return [A.zero] * 0
        basis = self.by_degree.get(u.degree, [])
        if not basis:
            return None
        vecs = [b.vector(u.degree) for b in basis]
        return la.solve_in_span(vecs, u.vector(), A.zero)

    def global_coordinates(self, u: Derivation) -> list:
        A = self.ambient
        out = [A.zero] * self.dim
        if u.is_zero():
            return out
        local = self.coordinates(u)
        if local is None:
            raise ConsistencyError(f"{u.text()} is not in the Yau algebra")
        offset = 0
        for d in sorted(self.by_degree):
            if d == u.degree:
                for j, c in enumerate(local):
                    out[offset + j] = c
                break
            offset += len(self.by_degree[d])
        return out

    def bracket_table(self) -> list[tuple[int, int, int, object]]:
        """Sparse triples (i, j, l, c): [b_i, b_j] = sum c b_l, for i < j."""
        out = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                br = self.basis[i].bracket(self.basis[j])
                if br.is_zero():
                    continue
                coords = self.global_coordinates(br)
                for l, c in enumerate(coords):
                    if not is_zero(c):
                        out.append((i, j, l, c))
        return out

    def structure_tensor(self) -> dict[tuple[int, int], list]:
        table = {}
        for i, j, l, c in self.bracket_table():
            table.setdefault((i, j), [self.ambient.zero] * self.dim)[l] = c
        return table

    def check_jacobi(self) -> bool:
        """Jacobi identity over all basis triples, via the bracket table."""
        A = self.ambient
        n = self.dim
        T = self.structure_tensor()

        def br(i, j):
            if i == j:
                return None
            if i < j:
                return T.get((i, j))
            v = T.get((j, i))
            return None if v is None else [-c for c in v]

        def br_vec(vec, k):
            # [vec, b_k]
            out = [A.zero] * n
            for i, c in enumerate(vec):
                if is_zero(c):
                    continue
                b = br(i, k)
                if b is None:
                    continue
                for l, cl in enumerate(b):
                    if not is_zero(cl):
                        out[l] = out[l] + c * cl
            return out

        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    total = [A.zero] * n
                    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                        ab = br(a, b)
                        if ab is None:
                            continue
                        v = br_vec(ab, c)
                        total = [x + y for x, y in zip(total, v)]
                    if any(not is_zero(x) for x in total):
                        return False
        return True

    def derived_series(self) -> list[int]:
        """Dimensions of L, [L,L], [[L,L],[L,L]], ... until it stabilizes."""
        A = self.ambient
        n = self.dim
        T = self.structure_tensor()
        current = [[A.one if r == c else A.zero for c in range(n)] for r in range(n)]
        dims = [n]
        while current:
            vecs = []
            for a in range(len(current)):
                for b in range(a + 1, len(current)):
                    acc = [A.zero] * n
                    for i, ci in enumerate(current[a]):
                        if is_zero(ci):
                            continue
                        for j, cj in enumerate(current[b]):
                            if is_zero(cj) or i == j:
                                continue
                            v = T.get((i, j)) if i < j else T.get((j, i))
                            if v is None:
                                continue
                            s = ci * cj if i < j else -(ci * cj)
                            for l, cl in enumerate(v):
                                if not is_zero(cl):
                                    acc[l] = acc[l] + s * cl
                    if any(not is_zero(x) for x in acc):
                        vecs.append(acc)
            nxt = la.span_basis(vecs)
            if len(nxt) == len(current):
                break
            current = nxt
            dims.append(len(current))
        return dims

    def is_solvable(self) -> bool:
        return self.derived_series()[-1] == 0

    def report(self) -> dict:
        A = self.ambient
        return {
            "family": A.family.name,
            "k": "inf" if A.k is None else A.k,
            "t": "symbolic" if A.symbolic else A.t.text(),
            "dim": self.dim,
            "degree_profile": {str(d): n for d, n in self.degree_profile().items()},
            "basis": [b.text() for b in self.basis],
            "bracket_table": [[i, j, l, c.text()] for i, j, l, c in self.bracket_table()],
        }


def compute_yau(A: ModuliAlgebra) -> YauAlgebra:
    return YauAlgebra(A)


class StructureConstants:
    """Brackets of an explicit basis expanded in that basis."""

    def __init__(self, L: YauAlgebra, basis: Sequence[Derivation]):
        self.L = L
        self.basis = list(basis)
        n = len(self.basis)
        if n != L.dim:
            raise ValueError(f"{n} derivations given, algebra has dimension {L.dim}")
        for u in self.basis:
            if not L.contains(u):
                raise ConsistencyError(f"{u.text()} is not a derivation of the algebra")
        mat = [L.global_coordinates(u) for u in self.basis]
        if la.rank(mat) != n:
            raise ValueError("the given derivations are not linearly independent")
        self._by_degree: dict[int, list[int]] = {}
        for idx, u in enumerate(self.basis):
            self._by_degree.setdefault(u.degree, []).append(idx)
        self.table: dict[tuple[int, int], list] = {}
        for i in range(n):
            for j in range(i + 1, n):
                br = self.basis[i].bracket(self.basis[j])
                if br.is_zero():
                    continue
                self.table[(i, j)] = self.expand(br)

    def expand(self, u: Derivation) -> list:
        A = self.L.ambient
        n = len(self.basis)
        out = [A.zero] * n
        if u.is_zero():
            return out
        idx = self._by_degree.get(u.degree, [])
        vecs = [self.basis[i].vector(u.degree) for i in idx]
        coeffs = la.solve_in_span(vecs, u.vector(), A.zero) if vecs else None
        if coeffs is None:
            raise ConsistencyError(f"bracket {u.text()} falls outside the span of the given basis")
        for i, c in zip(idx, coeffs):
            out[i] = c
        return out

    def bracket(self, i: int, j: int) -> list:
        A = self.L.ambient
        if i == j:
            return [A.zero] * len(self.basis)
        if i < j:
            return self.table.get((i, j), [A.zero] * len(self.basis))
        return [-c for c in self.table.get((j, i), [A.zero] * len(self.basis))]

    def all_rational(self) -> bool:
        for v in self.table.values():
            for c in v:
                if isinstance(c, RatFunc):
                    if not c.is_const():
                        return False
                    c = c.const_value()
                if not c.is_rational():
                    return False
        return True


def structure_constants(L: YauAlgebra, basis: Sequence[Derivation]) -> StructureConstants:
    return StructureConstants(L, basis)
