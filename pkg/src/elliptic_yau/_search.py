"""Brute-force morphism search over matrices with entries in {0} and the 12th roots of unity.

Numeric pruning only proposes candidates; every reported morphism is
re-verified with exact arithmetic by the caller.
"""
from __future__ import annotations

from itertools import product
from typing import Optional, Sequence

import numpy as np

from . import _linalg as la
from .modalg import ModuliAlgebra
from .scalar import ZERO, Cyclo, as_cyclo, roots_of_unity

TOL = 1e-7


class SearchTooLarge(RuntimeError):
    pass


ENTRIES: list[Cyclo] = [ZERO] + roots_of_unity(12)
ENTRY_C = np.array([e.to_complex() for e in ENTRIES])


def _c(v) -> complex:
    return as_cyclo(v).to_complex()


def all_vectors(n: int) -> np.ndarray:
    """Index arrays of all nonzero vectors in ENTRIES^n."""
    idx = np.array(list(product(range(len(ENTRIES)), repeat=n)), dtype=np.int64)
    return idx[idx.any(axis=1)]


def normalized_vectors(n: int) -> np.ndarray:
    """Nonzero vectors whose first nonzero entry is 1 (index 1 in ENTRIES)."""
    idx = all_vectors(n)
    first = np.argmax(idx > 0, axis=1)
    return idx[idx[np.arange(len(idx)), first] == 1]


def eval_monomials(X: np.ndarray, monos: Sequence) -> np.ndarray:
    """X[..., 3] -> values[..., len(monos)]."""
    cols = []
    for e in monos:
        v = np.ones(X.shape[:-1], dtype=complex)
        for i, n in enumerate(e):
            if n:
                v = v * X[..., i] ** n
        cols.append(v)
    return np.stack(cols, axis=-1)


def _ideal_matrix(alg: ModuliAlgebra, d: int) -> tuple[list, np.ndarray]:
    sl = alg.slices[d]
    monos = list(sl.monomials)
    col = {m: j for j, m in enumerate(monos)}
    R = np.zeros((len(sl.rows), len(monos)), dtype=complex)
    for r, row in enumerate(sl.rows.values()):
        for m, v in row.items():
            R[r, col[m]] = _c(v)
    return monos, R


class Membership:
    """Numeric test for p in I_d by values on sample points (optionally on x_k = 0)."""

    def __init__(self, alg: ModuliAlgebra, d: int, rng: np.random.Generator, zero_coord: Optional[int] = None):
        monos, R = _ideal_matrix(alg, d)
        nfree = len([m for m in monos if zero_coord is None or m[zero_coord] == 0])
        N = nfree + 4
        P = rng.normal(size=(N, 3)) + 1j * rng.normal(size=(N, 3))
        if zero_coord is not None:
            P[:, zero_coord] = 0
        self.points = P
        V = eval_monomials(P, monos) @ R.T if len(R) else np.zeros((N, 0), dtype=complex)
        if V.shape[1]:
            U, sv, _ = np.linalg.svd(V, full_matrices=True)
            rank = int((sv > sv[0] * 1e-10).sum()) if len(sv) and sv[0] > 0 else 0
        else:
            U, rank = np.eye(N, dtype=complex), 0
        # the evaluation map is injective on the relevant monomials, so rank N - 4 means everything is in I
        self.Q = U[:, rank:].conj()
        self.trivial = rank >= nfree

    def residual(self, values: np.ndarray) -> np.ndarray:
        """values[..., N] -> relative distance to the ideal."""
        if self.trivial:
            return np.zeros(values.shape[:-1])
        num = np.linalg.norm(values @ self.Q, axis=-1)
        den = np.linalg.norm(values, axis=-1) + 1e-300
        return num / den


def _degrees(src: ModuliAlgebra, dst: ModuliAlgebra) -> list[int]:
    top = min(src.truncation, dst.truncation)
    return [d for d in range(1, top) if d in src.slices and src.slices[d].rows]


def elimination_polys(alg: ModuliAlgebra, d: int, keep: Sequence[int]) -> list[dict]:
    """Basis of I_d intersected with the polynomials in the variables ``keep``."""
    sl = alg.slices[d]
    monos = list(sl.monomials)
    rows = [[row.get(m, alg.zero) for m in monos] for row in sl.rows.values()]
    if not rows:
        return []
    sub = []
    for j, m in enumerate(monos):
        if all(m[i] == 0 for i in range(3) if i not in keep):
            sub.append([alg.one if jj == j else alg.zero for jj in range(len(monos))])
    if not sub:
        return []
    inter = la.intersect(rows, sub, alg.zero, alg.one)
    return [{m: v for m, v in zip(monos, vec) if not v.is_zero()} for vec in inter]


def _chunks(n: int, size: int):
    for lo in range(0, n, size):
        yield lo, min(n, lo + size)


def row_search(src: ModuliAlgebra, dst: ModuliAlgebra, rng, cap: int = 2_000_000) -> list[np.ndarray]:
    """Candidate matrices x = M x' (rows of M are the images of x, y, z), first row normalized."""
    degs = _degrees(src, dst)
    members = {d: Membership(dst, d, rng) for d in degs}
    E = ENTRY_C
    norm_rows = normalized_vectors(3)
    all_rows = all_vectors(3)

    def vals(rows_idx, P):  # linear forms at points: (n, N)
        return E[rows_idx] @ P.T

    # single-variable filter
    def single_ok(rows_idx, i):
        ok = np.ones(len(rows_idx), dtype=bool)
        for d in degs:
            polys = elimination_polys(src, d, [i])
            if not polys or members[d].trivial:
                continue
            P = members[d].points
            L = vals(rows_idx, P)
            for p in polys:
                (m, c), = [(m, c) for m, c in p.items()]
                v = _c(c) * L ** m[i]
                ok &= members[d].residual(v) < TOL
        return ok

    cand = [None, None, None]
    cand[0] = norm_rows[single_ok(norm_rows, 0)]
    cand[1] = all_rows[single_ok(all_rows, 1)]
    cand[2] = all_rows[single_ok(all_rows, 2)]

    def pair_ok(ri, rj, i, j):
        """Boolean matrix (len(ri), len(rj))."""
        ok = np.ones((len(ri), len(rj)), dtype=bool)
        for d in degs:
            polys = elimination_polys(src, d, [i, j])
            if not polys or members[d].trivial:
                continue
            mem = members[d]
            P = mem.points
            Li, Lj = vals(ri, P), vals(rj, P)
            for lo, hi in _chunks(len(ri), max(1, 200000 // max(1, len(rj)))):
                u = Li[lo:hi, None, :]
                w = Lj[None, :, :]
                for p in polys:
                    v = 0
                    for m, c in p.items():
                        v = v + _c(c) * u ** m[i] * w ** m[j]
                    ok[lo:hi] &= mem.residual(v) < TOL
        return ok

    ok01 = pair_ok(cand[0], cand[1], 0, 1)
    ok02 = pair_ok(cand[0], cand[2], 0, 2)
    need_b = np.flatnonzero(ok01.any(axis=0))
    need_c = np.flatnonzero(ok02.any(axis=0))
    ok12 = pair_ok(cand[1][need_b], cand[2][need_c], 1, 2)
    pos_b = {b: n for n, b in enumerate(need_b)}
    pos_c = {c: n for n, c in enumerate(need_c)}
    out = []
    for ia in range(len(cand[0])):
        bs = np.flatnonzero(ok01[ia])
        cs = np.flatnonzero(ok02[ia])
        if not len(bs) or not len(cs):
            continue
        sub = ok12[np.ix_([pos_b[b] for b in bs], [pos_c[c] for c in cs])]
        for x, y in zip(*np.nonzero(sub)):
            out.append(np.stack([cand[0][ia], cand[1][bs[x]], cand[2][cs[y]]]))
            if len(out) > cap:
                raise SearchTooLarge(f"more than {cap} candidate matrices")
    return out


def column_search(src: ModuliAlgebra, dst: ModuliAlgebra, rng, cap: int = 2_000_000) -> list[np.ndarray]:
    """Candidate matrices from pairwise column conditions on the coordinate planes x'_k = 0."""
    degs = _degrees(src, dst)
    E = ENTRY_C
    polys = {}
    for d in degs:
        monos, R = _ideal_matrix(src, d)
        polys[d] = (monos, R)
    mems = {(d, k): Membership(dst, d, rng, zero_coord=k) for d in degs for k in range(3)}
    first = normalized_vectors(3)
    rest = all_vectors(3)

    def pair_ok(ci, cj, i, j):
        k = 3 - i - j
        ok = np.ones((len(ci), len(cj)), dtype=bool)
        Ci, Cj = E[ci], E[cj]
        for d in degs:
            mem = mems[(d, k)]
            if mem.trivial:
                continue
            monos, R = polys[d]
            pi, pj = mem.points[:, i], mem.points[:, j]
            step = max(1, 64 * 2196 // max(1, len(cj)))
            for lo, hi in _chunks(len(ci), step):
                X = Ci[lo:hi, None, None, :] * pi[None, None, :, None] + Cj[None, :, None, :] * pj[None, None, :, None]
                V = eval_monomials(X, monos) @ R.T  # (a, b, N, r)
                V = np.moveaxis(V, -1, -2)
                ok[lo:hi] &= (mem.residual(V) < TOL).all(axis=-1)
        return ok

    ok01 = pair_ok(first, rest, 0, 1)
    ok02 = pair_ok(first, rest, 0, 2)
    need_1 = np.flatnonzero(ok01.any(axis=0))
    need_2 = np.flatnonzero(ok02.any(axis=0))
    ok12 = pair_ok(rest[need_1], rest[need_2], 1, 2)
    pos1 = {b: n for n, b in enumerate(need_1)}
    pos2 = {c: n for n, c in enumerate(need_2)}
    out = []
    for ia in range(len(first)):
        bs = np.flatnonzero(ok01[ia])
        cs = np.flatnonzero(ok02[ia])
        if not len(bs) or not len(cs):
            continue
        sub = ok12[np.ix_([pos1[b] for b in bs], [pos2[c] for c in cs])]
        for x, y in zip(*np.nonzero(sub)):
            # columns -> matrix
            out.append(np.stack([first[ia], rest[bs[x]], rest[cs[y]]], axis=1))
            if len(out) > cap:
                raise SearchTooLarge(f"more than {cap} candidate matrices")
    return out


def full_filter(cands: Sequence[np.ndarray], src: ModuliAlgebra, dst: ModuliAlgebra, rng) -> list[np.ndarray]:
    """Keep invertible candidates whose images of all ideal elements pass the numeric test."""
    if not cands:
        return []
    idx = np.stack(cands)
    M = ENTRY_C[idx]
    keep = np.abs(np.linalg.det(M)) > 1e-9
    for d in _degrees(src, dst):
        mem = Membership(dst, d, rng)
        if mem.trivial:
            continue
        monos, R = _ideal_matrix(src, d)
        X = np.einsum("nij,pj->npi", M, mem.points)
        V = np.moveaxis(eval_monomials(X, monos) @ R.T, -1, -2)
        keep &= (mem.residual(V) < TOL).all(axis=-1)
    return [c for c, k in zip(cands, keep) if k]


def to_exact(idx: np.ndarray) -> tuple:
    return tuple(tuple(ENTRIES[int(v)] for v in row) for row in idx)


def e7_blocks() -> np.ndarray:
    """2x2 index blocks (row-major) with first nonzero entry of the first row equal to 1."""
    idx = np.array(list(product(range(len(ENTRIES)), repeat=4)), dtype=np.int64)
    first = np.where(idx[:, 0] > 0, idx[:, 0], idx[:, 1])
    idx = idx[(first == 1)]
    M = ENTRY_C[idx].reshape(-1, 2, 2)
    return idx[np.abs(np.linalg.det(M)) > 1e-9]


def e7_block_filter(src: ModuliAlgebra, dst: ModuliAlgebra, rng) -> list[np.ndarray]:
    """Blocks B with g(B(x', y'), 0) in I_s restricted to z' = 0 for all ideal elements g (no z-image needed)."""
    blocks = e7_blocks()
    B = ENTRY_C[blocks].reshape(-1, 2, 2)
    keep = np.ones(len(blocks), dtype=bool)
    for d in _degrees(src, dst):
        mem = Membership(dst, d, rng, zero_coord=2)
        if mem.trivial:
            continue
        monos, R = _ideal_matrix(src, d)
        P = mem.points
        xy = np.einsum("nij,pj->npi", B, P[:, :2])
        X = np.concatenate([xy, np.zeros(xy.shape[:-1] + (1,), dtype=complex)], axis=-1)
        V = np.moveaxis(eval_monomials(X, monos) @ R.T, -1, -2)
        keep &= (mem.residual(V) < TOL).all(axis=-1)
    return [b.reshape(2, 2) for b in blocks[keep]]
