"""Sparse multivariate polynomials over Cyclo or RatFunc, used as unknown coefficients."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .scalar import Cyclo, RatFunc, is_zero

_SCALARS = (Cyclo, RatFunc, int, Fraction)


class MPoly:
    __slots__ = ("terms", "nvars")

    def __init__(self, terms: dict, nvars: int):
        self.terms = {e: c for e, c in terms.items() if not is_zero(c)}
        self.nvars = nvars

    @classmethod
    def _make(cls, terms, nvars):
        obj = object.__new__(cls)
        obj.terms = terms
        obj.nvars = nvars
        return obj

    @classmethod
    def var(cls, i: int, nvars: int, one) -> "MPoly":
        return cls({tuple(int(j == i) for j in range(nvars)): one}, nvars)

    @classmethod
    def const(cls, c, nvars: int) -> "MPoly":
        return cls({(0,) * nvars: c}, nvars)

    def _lift(self, other):
        if isinstance(other, MPoly):
            return other
        if isinstance(other, _SCALARS):
            return MPoly.const(other, self.nvars)
        return None

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if is_zero(v):
                    del out[e]
                else:
                    out[e] = v
        return MPoly._make(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._make({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            if is_zero(other) if not isinstance(other, Fraction) else other == 0:
                return MPoly._make({}, self.nvars)
            return MPoly._make({e: c * other for e, c in self.terms.items()}, self.nvars)
        if not isinstance(other, MPoly):
            return NotImplemented
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                prev = out.get(e)
                out[e] = v if prev is None else prev + v
        return MPoly({e: c for e, c in out.items()}, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = MPoly.const(self._one(), self.nvars)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _one(self):
        for c in self.terms.values():
            return c ** 0 if isinstance(c, Cyclo) else RatFunc.const(1)
        return Cyclo(1)

    # -- inspection
    def variables(self) -> set[int]:
        return {i for e in self.terms for i, n in enumerate(e) if n}

    def coefficients(self) -> list:
        return list(self.terms.values())

    def subs(self, i: int, value) -> "MPoly":
        """Replace variable i by a scalar or an MPoly."""
        out = MPoly._make({}, self.nvars)
        cache = {}
        for e, c in self.terms.items():
            n = e[i]
            rest = e[:i] + (0,) + e[i + 1:]
            base = MPoly._make({rest: c}, self.nvars)
            if n:
                if n not in cache:
                    cache[n] = value ** n
                base = base * cache[n]
            out = out + base
        return out

    def univariate(self, i: int) -> tuple:
        """Coefficient tuple (low -> high) when only variable i occurs."""
        if self.variables() - {i}:
            raise ValueError("polynomial involves other variables")
        deg = max((e[i] for e in self.terms), default=-1)
        zero = self._one() * 0
        out = [zero] * (deg + 1)
        for e, c in self.terms.items():
            out[e[i]] = c
        return tuple(out)

    def split(self, i: int) -> dict[int, "MPoly"]:
        """Group by the power of variable i."""
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            out.setdefault(e[i], {})[e[:i] + (0,) + e[i + 1:]] = c
        return {n: MPoly._make(t, self.nvars) for n, t in out.items()}

    def text(self, names: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(n if p == 1 else f"{n}^{p}" for n, p in zip(names, e) if p)
            ct = c.text() if hasattr(c, "text") else str(c)
            parts.append(f"({ct})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    def __repr__(self):
        return f"MPoly({self.text([f'v{i}' for i in range(self.nvars)])})"
