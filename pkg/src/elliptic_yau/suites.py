"""Verification suites behind ``elliptic-yau verify``.

Each suite returns a :class:`SuiteReport`: a list of named checks, every one
with a boolean verdict and a small JSON-friendly detail payload.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import grpd, invar
from .modalg import build_algebra
from .scalar import RHO, ZERO, Cyclo, MoebiusMap, RatFunc, as_cyclo
from .wpoly import E6, E7, E8, FamilyDef
from .yau import compute_yau

THEOREMS = ("A1", "A2", "A3", "B1", "B2", "B3", "C1", "C2", "lemmas")


@dataclass
class Check:
    name: str
    ok: bool
    detail: object = None

    def as_dict(self) -> dict:
        return {"name": self.name, "ok": bool(self.ok), "detail": self.detail}


@dataclass
class SuiteReport:
    theorem: str
    samples: list
    seed: int
    k: object  # int, None for infinity, or a label such as "2,3"
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, name: str, ok: bool, detail=None) -> bool:
        self.checks.append(Check(name, bool(ok), detail))
        return bool(ok)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def first_failure(self) -> Optional[dict]:
        for c in self.checks:
            if not c.ok:
                return c.as_dict()
        return None

    def as_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "k": "inf" if self.k is None else self.k,
            "seed": self.seed,
            "samples": [s.text() for s in self.samples],
            "ok": self.ok,
            "checks": [c.as_dict() for c in self.checks],
            "first_failure": self.first_failure(),
            "notes": list(self.notes),
        }


def _text(v) -> str:
    return v.text() if hasattr(v, "text") else str(v)


def sample_parameters(fam: FamilyDef, n: int, seed: int, bound: int = 20) -> list[Cyclo]:
    """n distinct rationals p/q with |p|, |q| <= bound, avoiding excluded and jump values."""
    rng = random.Random(seed)
    out: list[Cyclo] = []
    while len(out) < n:
        q = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        t = as_cyclo(q)
        if t.is_zero() or fam.is_excluded(t) or fam.is_jump(t) or t in out:
            continue
        if fam is E6 and any(fam.is_excluded(h(t)) or fam.is_jump(h(t)) for h in _e6_maps()):
            continue
        out.append(t)
    return out


def _e6_maps() -> list[MoebiusMap]:
    if not hasattr(_e6_maps, "cache"):
        _e6_maps.cache = grpd.group_H()
    return _e6_maps.cache


def _profile(elements) -> dict:
    return {str(k): v for k, v in sorted(grpd.order_profile(elements).items())}


A4_PROFILE = {"1": 1, "2": 3, "3": 8}
S4_PROFILE = {"1": 1, "2": 9, "3": 8, "4": 6}


# ---------------------------------------------------------------------------
# E6

def suite_A1(samples, seed, k=1) -> SuiteReport:
    rep = SuiteReport("A1", samples, seed, k)
    G = grpd.group_G()
    entries = {e for g in G.elements for row in g for e in row}
    rep.add("|G| = 216", len(G) == 216, len(G))
    rep.add("entries of G in {0, 1, rho, rho^2}", entries <= {Cyclo(0), Cyclo(1), RHO, RHO * RHO},
            sorted(_text(e) for e in entries))
    H = grpd.group_H()
    rep.add("<P, R> has order 12 with the A4 profile", len(H) == 12 and _profile(H) == A4_PROFILE, _profile(H))
    hom = grpd.verify_homomorphism_pi(G, E6)
    rep.add("pi is an anti-homomorphism G -> H onto", hom.ok and set(hom.image) == set(H),
            {"image": len(hom.image), "kernel": len(hom.kernel), "failures": len(hom.failures)})
    cls = grpd.verify_E6_classification(samples, k=k)
    rep.add("types I-VI give 54 matrices", cls.counts[0] == 54, {n: len(v) for n, v in cls.sparse.items()})
    rep.add("dense enumeration gives 162 matrices", cls.counts[1] == 162, cls.counts[1])
    rep.add("types I-VI and dense case together equal G", cls.union_equals_group)
    rep.add(f"every element of G is a k={k} morphism t -> pi(g)(t) satisfying the row relations",
            not cls.failures, {"per_sample": cls.morphism_checks, "failures": [str(f) for f in cls.failures[:1]]})
    return rep


def suite_A2(samples, seed, k=2) -> SuiteReport:
    if k is not None and k < 2:
        raise ValueError("A2 concerns k >= 2 or k = inf")
    rep = SuiteReport("A2", samples, seed, k)
    G = grpd.group_G()
    hom = grpd.verify_homomorphism_pi(G, E6)
    t = samples[0]
    for t0 in [t, as_cyclo(0), as_cyclo(6)]:
        bad = []
        for g in G.elements:
            s = hom.images[g](t0) if not _pole(hom.images[g], t0) else None
            if s is None or not grpd.is_morphism(grpd.WSubstitution.from_matrix(g), E6, k, t0, s).valid:
                bad.append(grpd.matrix_text(g))
                break
        rep.add(f"all 216 elements are morphisms out of t = {t0.text()}", not bad, bad[:1])
    found = grpd.brute_force_morphisms(E6, k, t, t, seed)
    stab = sorted((g for g in G.elements if hom.images[g](t) == t), key=grpd._matrix_sort_key)
    rep.add("brute-force Mor(t, t) equals the stabilizer of t in G", found == stab,
            {"t": t.text(), "brute_force": len(found), "stabilizer": len(stab)})
    return rep


def _pole(m: MoebiusMap, t0) -> bool:
    try:
        m(t0)
    except ZeroDivisionError:
        return True
    return False


def suite_A3(samples, seed, k=1) -> SuiteReport:
    rep = SuiteReport("A3", samples, seed, 1)
    sym = build_algebra(E6, 1, "symbolic")
    rep.add("dim A^1 = 11 symbolically", sym.dim == 11, sym.dim)
    L = compute_yau(sym)
    rep.add("dim L^1 = 22 symbolically", L.dim == 22, L.degree_profile())
    for t0 in (0, 6, 6 * RHO, 6 * RHO * RHO):
        t0 = as_cyclo(t0)
        n = compute_yau(build_algebra(E6, 1, t0)).dim
        rep.add(f"dim L^1 = 24 at t = {t0.text()}", n == 24, n)
    for t in ["symbolic", *samples]:
        cert = invar.torelli_certificate(t)
        label = t if isinstance(t, str) else t.text()
        rep.add(f"structure constants in the e-basis are rational and match the tables (t = {label})", cert.ok,
                {"e12": cert.e12_reading, "uw": cert.uw_match, "vv": cert.vv_match,
                 "rational": cert.all_rational, "mismatches": [list(m) for m in cert.mismatches[:3]]})
    if not invar.torelli_certificate().e12_printed_valid:
        rep.notes.append(f"the listed e12 is not a derivation; read as {invar.E6_E12_ALTERNATIVE}")
    return rep


# ---------------------------------------------------------------------------
# E7

def suite_B1(samples, seed, k=1) -> SuiteReport:
    rep = SuiteReport("B1", samples, seed, k)
    Gp = grpd.group_G_prime()
    rep.add("G' has 24 elements with the S4 profile", len(Gp) == 24 and _profile_matrices(Gp) == S4_PROFILE,
            _profile_matrices(Gp))
    rep.add("G' equals the listed blocks B_{alpha,beta}", set(Gp.elements) == set(grpd.G_prime_listing()))
    hom = grpd.verify_homomorphism_pi(Gp, E7)
    formula_ok = all(hom.images[grpd.canonical_matrix(grpd.B(a, b))] == grpd.pi_prime_formula(a, b)
                     for a in grpd.UNITS4 + (Cyclo(0),) for b in grpd.UNITS4 + (Cyclo(0),)
                     if not (a.is_zero() and b.is_zero()))
    rep.add("pi' is an anti-homomorphism given by the closed formula", hom.ok and formula_ok)
    klein = {grpd.canonical_matrix(grpd.B(a, b)) for a, b in ((1, 0), (-1, 0), (0, 1), (0, -1))}
    rep.add("ker pi' is the Klein four-group", set(hom.kernel) == klein and len(klein) == 4, len(hom.kernel))
    Hp = grpd.group_H_prime()
    rep.add("the image of pi' is H'", set(hom.image) == set(Hp), len(hom.image))
    ident = invar.e7_identity_check()
    rep.add("f_t(B x', gamma z') = (2 + alpha^2 t) f_s for all 16 (alpha, beta)", all(ident.values()),
            sum(ident.values()))
    bad = []
    for t in samples:
        for g in Gp.elements:
            sub = grpd.e7_extend(g, t)
            s = hom.images[g](t)
            if sub is None or not grpd.is_morphism(sub, E7, k, t, s).valid:
                bad.append({"t": t.text(), "block": grpd.matrix_text(g)})
                break
    rep.add(f"every block of G' extends to a k={k} morphism t -> pi'(g)(t)", not bad, bad[:1])
    return rep


def _profile_matrices(group) -> dict:
    return {str(k): v for k, v in sorted(group.order_profile().items())}


def suite_B2(samples, seed, k=2) -> SuiteReport:
    if k is not None and k < 2:
        raise ValueError("B2 concerns k >= 2 or k = inf")
    rep = SuiteReport("B2", samples, seed, k)
    t = samples[0]
    found = grpd.brute_force_morphisms(E7, k, t, t, seed)
    blocks = {b for b, _ in found}
    klein = {grpd.canonical_matrix(grpd.B(a, b)) for a, b in ((1, 0), (-1, 0), (0, 1), (0, -1))}
    rep.add("Mor(t, t) blocks are Id, B_{-1,0}, B_{0,1}, B_{0,-1}", blocks == klein, len(blocks))
    rep.add("each of them forces gamma^2 = 1", all(g == Cyclo(1) for _, g in found),
            [_text(g) for _, g in found])
    rep.notes.append("gamma^2 = 1 leaves gamma = +-1; z -> -z is an automorphism of every E7 algebra")
    a = grpd.I
    s = a * a * t
    found = grpd.brute_force_morphisms(E7, k, t, s, seed)
    want = {grpd.canonical_matrix(grpd.B(a, 0)), grpd.canonical_matrix(grpd.B(0, a))}
    rep.add("Mor(t, -t) consists of B_{i,0} and B_{0,i} up to the kernel",
            {b for b, _ in found} == {grpd.canonical_matrix(grpd.mat_mul(w, q)) for w in want for q in klein},
            len(found))
    return rep


def suite_B3(samples, seed, k=1) -> SuiteReport:
    rep = SuiteReport("B3", samples, seed, 1)
    zl = invar.e7_zeroth_lines()
    rep.add("the six cross-ratio values of l1..l4 equal the expected set", zl.ok,
            sorted(v.text() for v in zl.six))
    for t in ["symbolic", *samples]:
        fl = invar.e7_four_lines(t)
        label = t if isinstance(t, str) else t.text()
        rep.add(f"four lines H1..H4 (t = {label})", fl.ok, {n: v for n, v in fl.checks.items() if not v} or None)
        want = invar.expected_cross_ratio(fl.t)
        rep.add(f"cross-ratio of (H1, H2, H3, H4) (t = {label})", fl.cross_ratio == want, _text(fl.cross_ratio))
    fl = invar.e7_four_lines()
    if fl.h4_rule != "[V, U*]":
        rep.notes.append(f"[V, U*] meets <H1, H2> in a plane; H4 is taken from {fl.h4_rule}")
    cr = fl.cross_ratio
    bad = [m.text() for m in grpd.group_H_prime() if cr.compose(m.as_ratfunc()) != cr]
    rep.add("the cross-ratio is invariant under H'", not bad, bad[:1])
    return rep


# ---------------------------------------------------------------------------
# E8

def _e8_check(rep: SuiteReport, k, samples):
    sol = grpd.solve_E8_morphisms(k)
    found = _symbolic_branches(sol)
    # the diagonal maps y = a y' send t to a t
    want = {(MoebiusMap(a, 0, 0, 1), a, c) for _, a, c in grpd.e8_expected_branches(k, 1)}
    rep.add(f"k={_k(k)} generic branches over Q(t)", found == want, sol.report()["generic"])
    for t in [*samples, as_cyclo(0)]:
        got = grpd.solve_E8_morphisms(k, t)
        found = grpd.e8_found_branches(got)
        want = grpd.e8_expected_branches(k, t)
        ok = found == want and all(v for _, _, v in got.morphisms)
        rep.add(f"k={_k(k)} morphisms out of t = {t.text()}", ok,
                {"found": sorted(_branch_text(b) for b in found), "expected": sorted(_branch_text(b) for b in want)})


def _symbolic_branches(sol) -> set:
    out = set()
    for b in sol.generic:
        v = b.values
        if any(v[n] != ZERO for n in "bde"):
            out.add((b.s_map(), "nonlinear", v["c"]))
        else:
            out.add((b.s_map(), v["a"], v["c"]))
    return out


def _branch_text(b) -> str:
    s, a, c = b
    return f"s={_text(s)}, a={_text(a)}, c={_text(c)}"


def _k(k) -> str:
    return "inf" if k is None else str(k)


def _e8_suite(name, samples, seed, ks) -> SuiteReport:
    ks = ks if isinstance(ks, tuple) else (ks,)
    rep = SuiteReport(name, samples, seed, ",".join(_k(k) for k in ks))
    for k in ks:
        _e8_check(rep, k, samples)
    return rep


def suite_C1(samples, seed, k=(0, 1)) -> SuiteReport:
    return _e8_suite("C1", samples, seed, k)


def suite_C2(samples, seed, k=(2, 3)) -> SuiteReport:
    return _e8_suite("C2", samples, seed, k)


# ---------------------------------------------------------------------------
# lemmas and properties

def suite_lemmas(samples, seed, k=1) -> SuiteReport:
    rep = SuiteReport("lemmas", samples, seed, k)
    jr = invar.j_invariance_report()
    for name, res in jr.items():
        rep.add(f"j-invariance: {name}", all(res.values()) if isinstance(res, dict) else bool(res), res)
    rep.add("A2 induces t -> R(t) at k=0", grpd.is_morphism(
        grpd.WSubstitution.from_matrix(grpd.A2), E6, 0, RatFunc.t(), grpd.R_MAP.as_ratfunc()).valid)
    for fam, kk in ((E6, 0), (E6, 1), (E7, 0), (E7, 1), (E8, 0), (E8, 1)):
        L = compute_yau(build_algebra(fam, kk, "symbolic"))
        rep.add(f"Jacobi identity on L^{kk}({fam.name}; t)", L.check_jacobi(), L.dim)
    sym = build_algebra(E7, 0, "symbolic")
    n = compute_yau(sym).dim
    rep.add("dim L^0(E7; t) = 11 symbolically", n == 11, n)
    for t0 in (0, 6, -6):
        n = compute_yau(build_algebra(E7, 0, t0)).dim
        rep.add(f"dim L^0(E7) = 12 at t = {t0}", n == 12, n)
    n = compute_yau(build_algebra(E7, 1, "symbolic")).dim
    rep.add("dim L^1(E7; t) = 23 symbolically", n == 23, n)
    for fam in (E6, E7, E8):
        A = build_algebra(fam, k, "symbolic")
        for t in samples:
            if fam.is_excluded(t) or fam.is_jump(t):
                continue
            spec = A.specialize_check(t)
            rep.add(f"specialization of A^{k}({fam.name}) at t = {t.text()}", spec["consistent"], spec["mismatches"])
    G = grpd.group_G()
    hom = grpd.verify_homomorphism_pi(G, E6)
    bad = []
    for t in samples[:2]:
        for g in G.elements:
            s = hom.images[g](t)
            if not grpd.transpose_duality(g, t, s).valid:
                bad.append({"t": t.text(), "g": grpd.matrix_text(g)})
                break
    rep.add("transpose duality g^T: -18/s -> -18/t", not bad, bad[:1])
    return rep


SUITES: dict[str, Callable] = {
    "A1": suite_A1, "A2": suite_A2, "A3": suite_A3,
    "B1": suite_B1, "B2": suite_B2, "B3": suite_B3,
    "C1": suite_C1, "C2": suite_C2, "lemmas": suite_lemmas,
}

FAMILY_OF = {"A1": E6, "A2": E6, "A3": E6, "B1": E7, "B2": E7, "B3": E7, "C1": E8, "C2": E8, "lemmas": E6}
DEFAULT_K = {"A1": 1, "A2": 2, "A3": 1, "B1": 1, "B2": 2, "B3": 1, "C1": (0, 1), "C2": (2, 3), "lemmas": 1}


def run_suite(theorem: str, samples: int = 5, seed: int = 0, k="default") -> SuiteReport:
    if theorem not in SUITES:
        raise ValueError(f"unknown theorem {theorem!r}")
    ts = sample_parameters(FAMILY_OF[theorem], samples, seed)
    if theorem in ("B1", "B2", "B3", "lemmas"):
        # keep E7 samples clear of its own special values as well
        ts = [t for t in sample_parameters(E7, samples + 10, seed) if _e7_generic(t)][:samples] \
            if theorem != "lemmas" else ts
    kk = DEFAULT_K[theorem] if k == "default" else k
    return SUITES[theorem](ts, seed, kk)


def _e7_generic(t) -> bool:
    return all(not (E7.is_excluded(h(t)) or E7.is_jump(h(t))) for h in grpd.group_H_prime() if not _pole(h, t))
