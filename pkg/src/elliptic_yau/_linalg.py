"""Dense exact linear algebra over Cyclo / RatFunc entries.

Matrices are lists of rows (lists).  Entries only need +, -, *, / and is_zero().
"""
from __future__ import annotations

from typing import Sequence

from .scalar import Cyclo, RatFunc, is_zero


def _size(x) -> int:
    if isinstance(x, RatFunc):
        return len(x.num) + len(x.den)
    return 0


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        best = None
        for i in range(r, len(m)):
            v = m[i][c]
            if not is_zero(v):
                if best is None or _size(v) < _size(m[best][c]):
                    best = i
                    if _size(v) <= 2:
                        break
        if best is None:
            continue
        m[r], m[best] = m[best], m[r]
        inv = 1 / m[r][c]
        row = [v * inv if not is_zero(v) else v for v in m[r]]
        m[r] = row
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if not is_zero(f):
                    mi = m[i]
                    for j in range(c, ncols):
                        if not is_zero(row[j]):
                            mi[j] = mi[j] - f * row[j]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int, zero, one) -> list[list]:
    """Basis of {v : rows . v = 0}, one vector per free column (in column order)."""
    red, piv = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for r, pc in enumerate(piv):
            x = red[r][fc]
            if not is_zero(x):
                v[pc] = -x
        basis.append(v)
    return basis


def solve_in_span(vectors: Sequence[Sequence], target: Sequence, zero):
    """Coefficients c with sum c_i vectors_i = target, or None if target is outside the span.

    The vectors must be linearly independent.
    """
    n = len(vectors)
    dim = len(target)
    # augmented system: columns = vectors, last column = target
    rows = [[vectors[j][i] for j in range(n)] + [target[i]] for i in range(dim)]
    red, piv = rref(rows, n + 1)
    if n in piv:
        return None
    if len(piv) != n:
        raise ValueError("vectors are linearly dependent")
    coeffs = [zero] * n
    for r, pc in enumerate(piv):
        coeffs[pc] = red[r][n]
    return coeffs


def particular_solution(vectors: Sequence[Sequence], target: Sequence, zero):
    """Some c with sum c_i vectors_i = target (free coefficients set to zero), or None."""
    n = len(vectors)
    rows = [[vectors[j][i] for j in range(n)] + [target[i]] for i in range(len(target))]
    red, piv = rref(rows, n + 1)
    if n in piv:
        return None
    coeffs = [zero] * n
    for r, pc in enumerate(piv):
        coeffs[pc] = red[r][n]
    return coeffs


def span_basis(vectors: Sequence[Sequence]) -> list[list]:
    """Echelon basis (the nonzero RREF rows) of the span."""
    if not vectors:
        return []
    return rref(vectors)[0]


def intersect(a: Sequence[Sequence], b: Sequence[Sequence], zero, one) -> list[list]:
    """Basis of span(a) cap span(b)."""
    a = span_basis(a)
    b = span_basis(b)
    if not a or not b:
        return []
    dim = len(a[0])
    # solve sum x_i a_i - sum y_j b_j = 0
    rows = [[a[i][c] for i in range(len(a))] + [-b[j][c] for j in range(len(b))] for c in range(dim)]
    ker = nullspace(rows, len(a) + len(b), zero, one)
    out = []
    for v in ker:
        w = [zero] * dim
        for i in range(len(a)):
            if not is_zero(v[i]):
                w = [w[c] + v[i] * a[i][c] for c in range(dim)]
        out.append(w)
    return span_basis(out)


def mat_vec(m: Sequence[Sequence], v: Sequence, zero):
    out = []
    for row in m:
        acc = zero
        for a, b in zip(row, v):
            if not is_zero(a) and not is_zero(b):
                acc = acc + a * b
        out.append(acc)
    return out


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence], zero):
    n, m, p = len(a), len(b), len(b[0])
    out = [[zero] * p for _ in range(n)]
    for i in range(n):
        for k in range(m):
            x = a[i][k]
            if is_zero(x):
                continue
            for j in range(p):
                y = b[k][j]
                if not is_zero(y):
                    out[i][j] = out[i][j] + x * y
    return out


def det(m: Sequence[Sequence], zero, one):
    a = [list(r) for r in m]
    n = len(a)
    d = one
    for c in range(n):
        p = next((r for r in range(c, n) if not is_zero(a[r][c])), None)
        if p is None:
            return zero
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d = d * a[c][c]
        inv = 1 / a[c][c]
        for r in range(c + 1, n):
            f = a[r][c]
            if not is_zero(f):
                f = f * inv
                for j in range(c, n):
                    a[r][j] = a[r][j] - f * a[c][j]
    return d


def inverse(m: Sequence[Sequence], zero, one):
    n = len(m)
    aug = [list(m[i]) + [one if i == j else zero for j in range(n)] for i in range(n)]
    red, piv = rref(aug, 2 * n)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red[:n]]


__all__ = [
    "rref",
    "rank",
    "nullspace",
    "solve_in_span",
    "span_basis",
    "intersect",
    "mat_vec",
    "mat_mul",
    "det",
    "inverse",
    "Cyclo",
]
