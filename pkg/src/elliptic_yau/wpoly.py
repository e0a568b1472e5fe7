"""Sparse weighted polynomials in x, y, z and the three parameter families.

Coefficients are field elements: either :class:`Cyclo` (parameter specialized)
or :class:`RatFunc` (parameter symbolic).  The two are never mixed inside one
polynomial by the constructors here, but arithmetic coerces when they meet.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Optional, Sequence, Union

from .scalar import (
    ONE,
    RHO,
    ZERO,
    Cyclo,
    RatFunc,
    _join_terms,
    _term_text,
    as_cyclo,
    field_one,
    is_zero,
    tokenize,
    SCALAR_SYMBOLS,
)

Exp = tuple[int, int, int]
Field = Union[Cyclo, RatFunc]
VARS = ("x", "y", "z")


class WeightMismatch(ValueError):
    pass


class ExcludedParameter(ValueError):
    """The parameter value makes the singularity non-isolated."""


def wdeg(e: Exp, weights: Sequence[int]) -> int:
    return e[0] * weights[0] + e[1] * weights[1] + e[2] * weights[2]


@lru_cache(maxsize=None)
def monomials_of_degree(d: int, weights: tuple[int, int, int]) -> tuple[Exp, ...]:
    """Monomials of weighted degree d, in decreasing graded-lex order (x > y > z)."""
    w1, w2, w3 = weights
    out = []
    for a in range(d // w1, -1, -1):
        r1 = d - a * w1
        for b in range(r1 // w2, -1, -1):
            r2 = r1 - b * w2
            if r2 % w3 == 0:
                out.append((a, b, r2 // w3))
    return tuple(out)


@lru_cache(maxsize=None)
def plain_monomials(k: int) -> tuple[Exp, ...]:
    """Monomials of plain total degree k, lex-decreasing."""
    return monomials_of_degree(k, (1, 1, 1))


def monomial_key(e: Exp, weights: Sequence[int]):
    """Sort key: larger key means larger in graded-lex order."""
    return (wdeg(e, weights), e)


def _mono_text(e: Exp) -> list[str]:
    out = []
    for v, n in zip(VARS, e):
        if n == 1:
            out.append(v)
        elif n > 1:
            out.append(f"{v}^{n}")
    return out


def _coeff_terms(c: Field, mono: list[str]) -> list[tuple[bool, str]]:
    if isinstance(c, Cyclo):
        return [_term_text(q, ([] if s == "1" else [s]) + mono) for q, s in c.components()]
    if len(c.den) == 1:
        terms = []
        for k in range(len(c.num) - 1, -1, -1):
            cc = c.num[k]
            if cc.is_zero():
                continue
            tv = [] if k == 0 else ["t" if k == 1 else f"t^{k}"]
            for q, s in cc.components():
                terms.append(_term_text(q, ([] if s == "1" else [s]) + tv + mono))
        return terms
    body = c.text()
    return [(False, "*".join([body] + mono) if mono else body)]


class WPoly:
    """Polynomial in x, y, z with a weight system; immutable."""

    __slots__ = ("terms", "weights")

    def __init__(self, terms: Mapping[Exp, Field] | None = None, weights: Sequence[int] = (1, 1, 1)):
        self.weights = tuple(weights)
        if min(self.weights) < 1:
            raise ValueError("weights must be positive")
        self.terms = {e: c for e, c in (terms or {}).items() if not is_zero(c)}

    @classmethod
    def _make(cls, terms: dict, weights: tuple):
        obj = object.__new__(cls)
        obj.terms = terms
        obj.weights = weights
        return obj

    @classmethod
    def var(cls, i: int, weights: Sequence[int] = (1, 1, 1), one: Field = ONE) -> "WPoly":
        e = [0, 0, 0]
        e[i] = 1
        return cls({tuple(e): one}, weights)

    @classmethod
    def monomial(cls, e: Exp, coeff: Field = ONE, weights: Sequence[int] = (1, 1, 1)) -> "WPoly":
        return cls({tuple(e): coeff}, weights)

    @classmethod
    def constant(cls, c: Field, weights: Sequence[int] = (1, 1, 1)) -> "WPoly":
        return cls({(0, 0, 0): c}, weights)

    # -- inspection
    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, e: Exp) -> Optional[Field]:
        return self.terms.get(tuple(e))

    def monomials(self) -> list[Exp]:
        w = self.weights
        return sorted(self.terms, key=lambda e: monomial_key(e, w), reverse=True)

    def degrees(self) -> set[int]:
        return {wdeg(e, self.weights) for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        """Weighted degree of a nonzero homogeneous polynomial."""
        ds = self.degrees()
        if len(ds) != 1:
            raise ValueError("polynomial is zero or not weighted homogeneous")
        return next(iter(ds))

    def plain_degree(self) -> int:
        return max(sum(e) for e in self.terms)

    def leading(self) -> tuple[Exp, Field]:
        e = self.monomials()[0]
        return e, self.terms[e]

    # -- arithmetic
    def _check(self, other: "WPoly"):
        if self.weights != other.weights:
            raise WeightMismatch(f"weights {self.weights} and {other.weights} differ")

    def __add__(self, other):
        if not isinstance(other, WPoly):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                s = v + c
                if is_zero(s):
                    del out[e]
                else:
                    out[e] = s
        return WPoly._make(out, self.weights)

    def __neg__(self):
        return WPoly._make({e: -c for e, c in self.terms.items()}, self.weights)

    def __sub__(self, other):
        if not isinstance(other, WPoly):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "WPoly":
        if is_zero(c) if not isinstance(c, Fraction) else c == 0:
            return WPoly._make({}, self.weights)
        return WPoly._make({e: v * c for e, v in self.terms.items()}, self.weights)

    def __mul__(self, other):
        if isinstance(other, WPoly):
            self._check(other)
            out: dict = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                    v = c1 * c2
                    prev = out.get(e)
                    out[e] = v if prev is None else prev + v
            return WPoly._make({e: c for e, c in out.items() if not is_zero(c)}, self.weights)
        if isinstance(other, (Cyclo, RatFunc, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Cyclo, RatFunc, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = WPoly._make({(0, 0, 0): self._one()}, self.weights)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def _one(self):
        for c in self.terms.values():
            return field_one(c)
        return ONE

    def mul_monomial(self, m: Exp, c: Field | None = None) -> "WPoly":
        out = {}
        for e, v in self.terms.items():
            out[(e[0] + m[0], e[1] + m[1], e[2] + m[2])] = v if c is None else v * c
        return WPoly._make(out, self.weights) if c is None or not is_zero(c) else WPoly._make({}, self.weights)

    def deriv(self, i: int) -> "WPoly":
        out = {}
        for e, c in self.terms.items():
            n = e[i]
            if n:
                e2 = list(e)
                e2[i] -= 1
                out[tuple(e2)] = c * n
        return WPoly._make(out, self.weights)

    def substitute(self, images: Sequence["WPoly"]) -> "WPoly":
        """Replace x, y, z by the given polynomials (which carry the target weights)."""
        if len(images) != 3:
            raise ValueError("need three images")
        target_w = images[0].weights
        powers = [[None] for _ in range(3)]
        result = WPoly._make({}, target_w)

        def power(i, n):
            cache = powers[i]
            while len(cache) <= n:
                if len(cache) == 1:
                    cache.append(images[i])
                else:
                    cache.append(cache[-1] * images[i])
            return cache[n]

        for e, c in self.terms.items():
            term = None
            for i in range(3):
                if e[i]:
                    p = power(i, e[i])
                    term = p if term is None else term * p
            if term is None:
                term = WPoly._make({(0, 0, 0): c}, target_w)
            else:
                term = term.scale(c)
            result = result + term
        return result

    def map_coeffs(self, fn) -> "WPoly":
        out = {}
        for e, c in self.terms.items():
            v = fn(c)
            if not is_zero(v):
                out[e] = v
        return WPoly._make(out, self.weights)

    def specialize(self, t0) -> "WPoly":
        """Evaluate RatFunc coefficients at t = t0."""
        t0 = as_cyclo(t0)
        return self.map_coeffs(lambda c: c.eval(t0) if isinstance(c, RatFunc) else c)

    def to_ratfunc(self) -> "WPoly":
        return self.map_coeffs(lambda c: c if isinstance(c, RatFunc) else RatFunc.const(c))

    def to_cyclo(self) -> "WPoly":
        return self.map_coeffs(as_cyclo)

    def with_weights(self, weights: Sequence[int]) -> "WPoly":
        return WPoly._make(dict(self.terms), tuple(weights))

    # -- comparison
    def __eq__(self, other):
        if not isinstance(other, WPoly):
            return NotImplemented
        if self.weights != other.weights or self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[e] == other.terms[e] for e in self.terms)

    def __hash__(self):
        return hash((self.weights, frozenset(self.terms)))

    # -- text
    def text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in self.monomials():
            parts.extend(_coeff_terms(self.terms[e], _mono_text(e)))
        return _join_terms(parts)

    def __repr__(self):
        return f"WPoly({self.text()}; w={self.weights})"

    __str__ = text


# ---------------------------------------------------------------------------
# parsing

class _Parser:
    def __init__(self, text: str, allow_xyz: bool, variables: Sequence[str] = VARS):
        self.toks = tokenize(text)
        self.pos = 0
        self.allow_xyz = allow_xyz
        self.text = text
        self.variables = tuple(variables)
        self.const_key = (0,) * len(self.variables)

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, op):
        tok = self.take()
        if tok != ("op", op):
            raise ValueError(f"expected {op!r} in {self.text!r}")

    # polynomials in x, y, z over RatFunc as dict exp -> RatFunc
    def parse(self):
        v = self.expr()
        if self.pos != len(self.toks):
            raise ValueError(f"trailing input in {self.text!r}")
        return v

    def expr(self):
        v = self.term()
        while True:
            kind, op = self.peek()
            if kind == "op" and op in "+-":
                self.take()
                w = self.term()
                v = _padd(v, w if op == "+" else _pneg(w))
            else:
                return v

    def term(self):
        v = self.unary()
        while True:
            kind, op = self.peek()
            if kind == "op" and op in "*/":
                self.take()
                w = self.unary()
                if op == "*":
                    v = _pmul(v, w)
                else:
                    if set(w) - {self.const_key}:
                        raise ValueError(f"division by a non-constant in {self.text!r}")
                    d = w.get(self.const_key)
                    if d is None or d.is_zero():
                        raise ZeroDivisionError(f"division by zero in {self.text!r}")
                    inv = d.inverse()
                    v = {e: c * inv for e, c in v.items()}
            else:
                return v

    def unary(self):
        kind, op = self.peek()
        if kind == "op" and op == "-":
            self.take()
            return _pneg(self.unary())
        if kind == "op" and op == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        kind, op = self.peek()
        if kind == "op" and op == "^":
            self.take()
            neg = False
            if self.peek() == ("op", "-"):
                self.take()
                neg = True
            kind, n = self.take()
            if kind != "num":
                raise ValueError(f"exponent must be an integer in {self.text!r}")
            n = int(n)
            if neg:
                if set(base) - {self.const_key} or self.const_key not in base:
                    raise ValueError(f"negative power of a non-constant in {self.text!r}")
                return {self.const_key: base[self.const_key] ** (-n)}
            result = {self.const_key: RatFunc.const(1)}
            for _ in range(n):
                result = _pmul(result, base)
            return result
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return {self.const_key: RatFunc.const(int(val))}
        if kind == "id":
            if val == "t":
                return {self.const_key: RatFunc.t()}
            if val in SCALAR_SYMBOLS:
                return {self.const_key: RatFunc.const(SCALAR_SYMBOLS[val])}
            if val in self.variables:
                if not self.allow_xyz:
                    raise ValueError(f"variable {val!r} not allowed in a scalar expression")
                e = [0] * len(self.variables)
                e[self.variables.index(val)] = 1
                return {tuple(e): RatFunc.const(1)}
            raise ValueError(f"unknown symbol {val!r} in {self.text!r}")
        if (kind, val) == ("op", "("):
            v = self.expr()
            self.expect(")")
            return v
        raise ValueError(f"unexpected token {val!r} in {self.text!r}")


def _padd(p, q):
    out = dict(p)
    for e, c in q.items():
        s = out[e] + c if e in out else c
        if s.is_zero():
            out.pop(e, None)
        else:
            out[e] = s
    return out


def _pneg(p):
    return {e: -c for e, c in p.items()}


def _pmul(p, q):
    out: dict = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out[e] + c1 * c2 if e in out else c1 * c2
    return {e: c for e, c in out.items() if not c.is_zero()}


def parse_expression(text: str, allow_xyz: bool = True, variables: Sequence[str] = VARS):
    """Parse text; returns a RatFunc when variables are disallowed, else a term dict."""
    parser = _Parser(text, allow_xyz, variables)
    terms = parser.parse()
    if not allow_xyz:
        return terms.get(parser.const_key, RatFunc.const(0))
    return terms


def parse_wpoly(text: str, weights: Sequence[int] = (1, 1, 1), constants: bool = False) -> WPoly:
    """Parse a polynomial; coefficients are RatFunc, or Cyclo when ``constants``."""
    terms = parse_expression(text, allow_xyz=True)
    p = WPoly(terms, weights)
    return p.to_cyclo() if constants else p


# ---------------------------------------------------------------------------
# the three families

@dataclass(frozen=True)
class FamilyDef:
    name: str
    weights: tuple[int, int, int]
    fixed_terms: tuple[Exp, ...]
    t_monomial: Exp
    excluded_poly: tuple[int, ...]  # integer coefficients in t, low -> high
    jump_points: tuple[Cyclo, ...]

    @property
    def degree(self) -> int:
        return wdeg(self.t_monomial, self.weights)

    def f(self, t) -> WPoly:
        t = _as_param(t)
        one = field_one(t)
        terms = {e: one for e in self.fixed_terms}
        terms[self.t_monomial] = t
        return WPoly(terms, self.weights)

    def excluded_value(self, t):
        t = _as_param(t)
        acc = None
        for c in reversed(self.excluded_poly):
            acc = (t * 0 + c) if acc is None else acc * t + c
        return acc

    def is_excluded(self, t) -> bool:
        return is_zero(self.excluded_value(t))

    def is_jump(self, t) -> bool:
        t = _as_param(t)
        if isinstance(t, RatFunc):
            if not t.is_const():
                return False
            t = t.const_value()
        return t in self.jump_points

    def check_parameter(self, t):
        if self.is_excluded(t):
            raise ExcludedParameter(
                f"t = {_as_param(t).text()} is excluded for {self.name} (singularity not isolated)"
            )

    def excluded_text(self) -> str:
        from .scalar import poly_text

        return poly_text(tuple(Cyclo(c) for c in self.excluded_poly)) + " = 0"

    def __repr__(self):
        return f"FamilyDef({self.name})"


def _as_param(t):
    if isinstance(t, (RatFunc, Cyclo)):
        return t
    if isinstance(t, (int, Fraction)):
        return Cyclo.rational(t)
    if isinstance(t, str):
        if t == "symbolic":
            return RatFunc.t()
        return parse_scalar(t)
    raise TypeError(f"bad parameter value {t!r}")


def parse_scalar(text: str) -> Cyclo:
    r = parse_expression(text, allow_xyz=False)
    if not r.is_const():
        raise ValueError(f"{text!r} is not a constant")
    return r.const_value()


E6 = FamilyDef(
    "E6",
    (1, 1, 1),
    ((3, 0, 0), (0, 3, 0), (0, 0, 3)),
    (1, 1, 1),
    # t^3 = -27 is where f splits into three planes; t^3 = 27 is kept excluded as well
    (-729, 0, 0, 0, 0, 0, 1),
    (ZERO, Cyclo(6), RHO * 6, RHO * RHO * 6),
)
E7 = FamilyDef(
    "E7",
    (1, 1, 2),
    ((4, 0, 0), (0, 4, 0), (0, 0, 2)),
    (2, 2, 0),
    (-4, 0, 1),
    (ZERO, Cyclo(6), Cyclo(-6)),
)
E8 = FamilyDef(
    "E8",
    (1, 2, 3),
    ((6, 0, 0), (0, 3, 0), (0, 0, 2)),
    (4, 1, 0),
    (27, 0, 0, 4),
    (ZERO,),
)
FAMILIES = {"E6": E6, "E7": E7, "E8": E8}


def family(name: str) -> FamilyDef:
    try:
        return FAMILIES[name.upper()]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; expected one of E6, E7, E8") from None


def jacobi_ideal(f: WPoly) -> list[WPoly]:
    if f.is_zero():
        raise ValueError("zero polynomial")
    return [f.deriv(i) for i in range(3)]


def ideal_generators(fam: FamilyDef, k: Optional[int], t) -> list[WPoly]:
    """Generators of <f, m^k J(f)>; k=None stands for k = infinity, i.e. <f>."""
    t = _as_param(t)
    fam.check_parameter(t)
    f = fam.f(t)
    if k is None:
        return [f]
    if k < 0:
        raise ValueError("k must be non-negative")
    gens = [f]
    J = jacobi_ideal(f)
    for mu in plain_monomials(k):
        for g in J:
            gens.append(g.mul_monomial(mu))
    return gens
