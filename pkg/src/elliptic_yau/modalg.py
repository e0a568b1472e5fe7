"""Graded quotient algebras A^k(f_t) = O / <f_t, m^k J(f_t)> by per-degree elimination."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

from .scalar import (
    Cyclo,
    RatFunc,
    as_cyclo,
    field_one,
    field_zero,
    is_zero,
    pdivmod,
    pgcd,
    pmonic,
    poly_text,
    PoleError,
)
from .wpoly import (
    Exp,
    FamilyDef,
    WPoly,
    _as_param,
    ideal_generators,
    monomials_of_degree,
    wdeg,
)

MAX_DEGREE = 80


class TruncationError(ValueError):
    pass


@dataclass
class DegreeSlice:
    """Echelon basis of one graded piece of the ideal."""

    degree: int
    monomials: tuple[Exp, ...]
    rows: dict[Exp, dict[Exp, object]]  # pivot monomial -> reduced row, row[pivot] = 1
    standard: list[Exp] = field(default_factory=list)

    @property
    def quotient_dim(self) -> int:
        return len(self.standard)

    def reduce_row(self, row: dict) -> dict:
        """Subtract pivot rows; the result only involves standard monomials."""
        out = dict(row)
        for m in [m for m in row if m in self.rows]:
            c = out.pop(m, None)
            if c is None or is_zero(c):
                continue
            for e, v in self.rows[m].items():
                if e == m:
                    continue
                s = out.get(e)
                nv = -(c * v) if s is None else s - c * v
                if is_zero(nv):
                    out.pop(e, None)
                else:
                    out[e] = nv
        return out


class _PivotLog:
    """Pairwise coprime monic factors of every pivot numerator met during elimination."""

    def __init__(self):
        self.factors: list[tuple] = []

    def add(self, c):
        if not isinstance(c, RatFunc) or len(c.num) <= 1:
            return
        p = pmonic(c.num)
        self._insert(p)

    def _insert(self, p):
        if len(p) <= 1:
            return
        for idx, q in enumerate(self.factors):
            g = pgcd(p, q)
            if len(g) > 1:
                if g == q and g == p:
                    return
                del self.factors[idx]
                for part in (g, pdivmod(q, g)[0], pdivmod(p, g)[0]):
                    self._insert(pmonic(part))
                return
        self.factors.append(p)

    def sorted(self) -> list[tuple]:
        return sorted(self.factors, key=lambda p: (len(p), poly_text(p)))


def column_key(e: Exp):
    """Column priority inside one degree: pure powers first, then fewer variables, then lex.

    Elimination happens degree by degree, so this only has to be a total order on each
    graded piece; it need not be multiplicative.
    """
    return (-((e[0] > 0) + (e[1] > 0) + (e[2] > 0)), e)


def ordered_monomials(d: int, weights) -> tuple[Exp, ...]:
    return tuple(sorted(monomials_of_degree(d, weights), key=column_key, reverse=True))


def _eliminate(monos: Sequence[Exp], rows: list[dict], log: _PivotLog) -> dict[Exp, dict]:
    echelon: dict[Exp, dict] = {}
    for row in rows:
        r = dict(row)
        for p in [m for m in r if m in echelon]:
            c = r.pop(p)
            for e, v in echelon[p].items():
                if e == p:
                    continue
                s = r.get(e)
                nv = -(c * v) if s is None else s - c * v
                if is_zero(nv):
                    r.pop(e, None)
                else:
                    r[e] = nv
        if not r:
            continue
        lead = max(r, key=column_key)
        lc = r[lead]
        log.add(lc)
        if lc != 1:
            inv = 1 / lc
            r = {e: v * inv for e, v in r.items()}
            r[lead] = lc * inv
        for p, prow in echelon.items():
            c = prow.get(lead)
            if c is None:
                continue
            del prow[lead]
            for e, v in r.items():
                if e == lead:
                    continue
                s = prow.get(e)
                nv = -(c * v) if s is None else s - c * v
                if is_zero(nv):
                    prow.pop(e, None)
                else:
                    prow[e] = nv
        echelon[lead] = r
    return echelon


class ModuliAlgebra:
    """Finite-dimensional graded quotient O / I with a standard-monomial basis."""

    def __init__(
        self,
        fam: FamilyDef,
        k: Optional[int],
        t,
        bound: Optional[int] = None,
        generators: Optional[list[WPoly]] = None,
    ):
        self.family = fam
        self.k = k
        self.t = _as_param(t)
        self.symbolic = isinstance(self.t, RatFunc) and not self.t.is_const()
        self.weights = fam.weights
        if generators is None:
            generators = ideal_generators(fam, k, self.t)
        else:
            fam.check_parameter(self.t)
        self.generators = generators
        if k is None and bound is None:
            raise TruncationError("k = infinity needs an explicit degree bound")
        self.bound = bound
        self.zero = field_zero(self.t)
        self.one = field_one(self.t)
        self._log = _PivotLog()
        self.slices: dict[int, DegreeSlice] = {}
        self._build()

    # -- construction
    def _build(self):
        w = self.weights
        gens_by_deg: dict[int, list[WPoly]] = {}
        for g in self.generators:
            if not g.is_zero():
                gens_by_deg.setdefault(g.degree(), []).append(g)
        window = max(w)
        full_run = 0
        d = 0
        limit = self.bound if self.bound is not None else MAX_DEGREE
        self.truncation = None
        while d <= limit:
            monos = ordered_monomials(d, w)
            rows = []
            for i in range(3):
                prev = self.slices.get(d - w[i])
                if prev is None:
                    continue
                for p, prow in prev.rows.items():
                    rows.append({(e[0] + (i == 0), e[1] + (i == 1), e[2] + (i == 2)): v for e, v in prow.items()})
            for g in gens_by_deg.get(d, ()):
                rows.append(dict(g.terms))
            # lower-degree ideal elements already enter through multiplication
            echelon = _eliminate(monos, rows, self._log)
            sl = DegreeSlice(d, monos, echelon)
            sl.standard = [m for m in monos if m not in echelon]
            self.slices[d] = sl
            if monos and not sl.standard:
                if full_run == 0:
                    run_start = d
                full_run += 1
            elif monos:
                full_run = 0
            if self.k is not None and full_run >= window and d >= max(gens_by_deg, default=0):
                self.truncation = run_start
                break
            d += 1
        if self.k is not None and self.truncation is None:
            raise TruncationError(f"no truncation found below degree {MAX_DEGREE}")
        if self.k is None:
            self.truncation = self.bound + 1
        top = self.truncation
        for dd in [dd for dd in self.slices if dd >= top]:
            del self.slices[dd]
        self.basis: list[Exp] = []
        for dd in range(top):
            self.basis.extend(self.slices[dd].standard)
        self.index = {m: i for i, m in enumerate(self.basis)}

    # -- queries
    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_truncated(self) -> bool:
        return self.k is None

    def hilbert_function(self) -> list[tuple[int, int]]:
        return [(d, self.slices[d].quotient_dim) for d in range(self.truncation)]

    def pivot_factors(self) -> list[tuple]:
        return self._log.sorted()

    def pivot_roots(self) -> list[str]:
        out = []
        for p in self.pivot_factors():
            if len(p) == 2:
                out.append((-p[0]).text())
            else:
                out.append(f"roots of {poly_text(p)}")
        return out

    def degree_of(self, e: Exp) -> int:
        return wdeg(e, self.weights)

    def nf_terms(self, p: WPoly) -> dict[Exp, object]:
        """Normal form as a dict standard monomial -> coefficient."""
        out: dict[Exp, object] = {}
        for e, c in p.terms.items():
            d = wdeg(e, self.weights)
            if d >= self.truncation:
                if self.k is None:
                    raise TruncationError(f"degree {d} exceeds the truncation bound {self.bound}")
                continue
            sl = self.slices[d]
            row = sl.rows.get(e)
            if row is None:
                s = out.get(e)
                out[e] = c if s is None else s + c
            else:
                for m, v in row.items():
                    if m == e:
                        continue
                    s = out.get(m)
                    out[m] = -(c * v) if s is None else s - c * v
        return {m: v for m, v in out.items() if not is_zero(v)}

    def normal_form(self, p: WPoly) -> list:
        """Coordinates of p in the standard-monomial basis."""
        vec = [self.zero] * self.dim
        for m, v in self.nf_terms(p).items():
            vec[self.index[m]] = v
        return vec

    def reduce(self, p: WPoly) -> WPoly:
        return WPoly._make(self.nf_terms(p), self.weights)

    def is_zero_mod(self, p: WPoly) -> bool:
        return not self.nf_terms(p)

    def element(self, coords: Sequence) -> WPoly:
        return WPoly({m: c for m, c in zip(self.basis, coords) if not is_zero(c)}, self.weights)

    def multiply(self, p: WPoly, q: WPoly) -> WPoly:
        return self.reduce(self.reduce(p) * self.reduce(q))

    def basis_poly(self, i: int) -> WPoly:
        return WPoly({self.basis[i]: self.one}, self.weights)

    def mult_table(self) -> list[tuple[int, int, int, object]]:
        """Sparse triples (i, j, l, c) with e_i e_j = sum c e_l, for i <= j."""
        out = []
        for i, a in enumerate(self.basis):
            for j in range(i, self.dim):
                b = self.basis[j]
                prod = (a[0] + b[0], a[1] + b[1], a[2] + b[2])
                if self.k is None and self.degree_of(prod) >= self.truncation:
                    continue  # beyond the truncation window
                nf = self.nf_terms(WPoly._make({prod: self.one}, self.weights))
                for m in sorted(nf, key=lambda m: self.index[m]):
                    out.append((i, j, self.index[m], nf[m]))
        return out

    def standard_in_degree(self, d: int) -> list[Exp]:
        if d < 0 or d >= self.truncation:
            return []
        return list(self.slices[d].standard)

    # -- specialization
    def specialize_check(self, t0) -> dict:
        """Compare this symbolic algebra, evaluated at t0, with the algebra built at t0."""
        t0 = as_cyclo(t0)
        direct = build_algebra(self.family, self.k, t0, self.bound)
        mismatches = []
        top = max(self.truncation, direct.truncation)
        for d in range(top):
            s_sym = self.slices.get(d)
            s_dir = direct.slices.get(d)
            std_sym = s_sym.standard if s_sym else []
            std_dir = s_dir.standard if s_dir else []
            if std_sym != std_dir:
                mismatches.append({"degree": d, "symbolic": len(std_sym), "specialized": len(std_dir)})
                continue
            try:
                for p, row in (s_sym.rows.items() if s_sym else ()):
                    drow = s_dir.rows[p]
                    spec = {e: v.eval(t0) if isinstance(v, RatFunc) else v for e, v in row.items()}
                    spec = {e: v for e, v in spec.items() if not v.is_zero()}
                    if spec != drow:
                        raise ValueError
            except (PoleError, ValueError, KeyError):
                mismatches.append({"degree": d, "symbolic": len(std_sym), "specialized": len(std_dir), "rows": "differ"})
        return {
            "t0": t0.text(),
            "jump_point": self.family.is_jump(t0),
            "consistent": not mismatches,
            "mismatches": mismatches,
            "hilbert_symbolic": self.hilbert_function(),
            "hilbert_specialized": direct.hilbert_function(),
        }

    # -- report
    def report(self) -> dict:
        return {
            "family": self.family.name,
            "k": "inf" if self.k is None else self.k,
            "t": "symbolic" if self.symbolic else self.t.text(),
            "weights": list(self.weights),
            "excluded": self.family.excluded_text(),
            "jump_point": False if self.symbolic else self.family.is_jump(self.t),
            "truncation_degree": self.truncation,
            "truncated_at_bound": self.bound if self.k is None else None,
            "dim": self.dim,
            "hilbert_function": [[d, n] for d, n in self.hilbert_function()],
            "basis": [_mono_str(m) for m in self.basis],
            "mult_table": [[i, j, l, c.text()] for i, j, l, c in self.mult_table()],
            "pivot_roots": self.pivot_roots(),
        }

    def __repr__(self):
        k = "inf" if self.k is None else self.k
        return f"ModuliAlgebra({self.family.name}, k={k}, t={self.t.text()}, dim={self.dim})"


def _mono_str(e: Exp) -> str:
    p = WPoly({e: Cyclo(1)})
    return p.text()


def _param_key(t):
    t = _as_param(t)
    return t


@lru_cache(maxsize=256)
def _build_cached(fam: FamilyDef, k, t, bound):
    return ModuliAlgebra(fam, k, t, bound)


def build_algebra(fam: FamilyDef, k: Optional[int], t, bound: Optional[int] = None) -> ModuliAlgebra:
    """Cached constructor; k=None means k = infinity (requires ``bound``)."""
    t = _as_param(t)
    if isinstance(t, RatFunc) and t.is_const():
        t = t.const_value()
    if k is None and bound is None:
        raise TruncationError("k = infinity needs an explicit degree bound")
    return _build_cached(fam, k, t, bound if k is None else None)


def presentation_algebra(fam: FamilyDef, gens: list[WPoly], t, bound: Optional[int] = None) -> ModuliAlgebra:
    """Quotient by an explicitly given list of homogeneous generators (k treated as finite)."""
    return ModuliAlgebra(fam, -1 if bound is None else None, t, bound, generators=gens)
