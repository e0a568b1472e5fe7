"""Exact scalars: the cyclotomic field Q(zeta_12) and rational functions in t over it.

Elements of Q(zeta_12) are stored in the power basis 1, z, z^2, z^3 modulo the
12th cyclotomic polynomial z^4 - z^2 + 1, with integer numerators over one
positive common denominator.  Rational functions keep a monic denominator
coprime to the numerator, so equality is plain structural equality.
"""
from __future__ import annotations

import cmath
import re
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

__all__ = [
    "Cyclo",
    "RatFunc",
    "MoebiusMap",
    "ZERO",
    "ONE",
    "ZETA",
    "RHO",
    "I",
    "roots_of_unity",
    "as_cyclo",
    "field_zero",
    "field_one",
    "is_zero",
    "poly_text",
    "PoleError",
]


class PoleError(ZeroDivisionError):
    """Evaluation of a rational function at a zero of its denominator."""


Number = Union[int, Fraction]


def _normalize(c0: int, c1: int, c2: int, c3: int, d: int):
    if d < 0:
        c0, c1, c2, c3, d = -c0, -c1, -c2, -c3, -d
    g = gcd(gcd(gcd(c0, c1), gcd(c2, c3)), d)
    if g > 1:
        return c0 // g, c1 // g, c2 // g, c3 // g, d // g
    return c0, c1, c2, c3, d


# z^m in the power basis, m = 0..11
_ZPOW = []
_v = (1, 0, 0, 0)
for _m in range(12):
    _ZPOW.append(_v)
    a0, a1, a2, a3 = _v
    # multiply by z: z^4 = z^2 - 1
    _v = (-a3, a0, a1 + a3, a2)
del _v, _m


class Cyclo:
    """Element of Q(zeta_12)."""

    __slots__ = ("c0", "c1", "c2", "c3", "den", "_hash")

    def __init__(self, c0: int = 0, c1: int = 0, c2: int = 0, c3: int = 0, den: int = 1):
        c0, c1, c2, c3, den = _normalize(c0, c1, c2, c3, den)
        self.c0 = c0
        self.c1 = c1
        self.c2 = c2
        self.c3 = c3
        self.den = den
        self._hash = None

    @classmethod
    def _raw(cls, c0, c1, c2, c3, den):
        obj = object.__new__(cls)
        obj.c0, obj.c1, obj.c2, obj.c3, obj.den = c0, c1, c2, c3, den
        obj._hash = None
        return obj

    @classmethod
    def from_fractions(cls, coeffs: Sequence[Number]) -> "Cyclo":
        fr = [Fraction(c) for c in coeffs]
        if len(fr) != 4:
            raise ValueError("need exactly 4 coordinates")
        d = 1
        for f in fr:
            d = d * f.denominator // gcd(d, f.denominator)
        return cls(*(int(f * d) for f in fr), den=d)

    @classmethod
    def rational(cls, q: Number) -> "Cyclo":
        q = Fraction(q)
        return cls(q.numerator, 0, 0, 0, q.denominator)

    @classmethod
    def zeta_power(cls, m: int) -> "Cyclo":
        return cls._raw(*_ZPOW[m % 12], 1)

    # -- inspection
    @property
    def coeffs(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        d = self.den
        return (Fraction(self.c0, d), Fraction(self.c1, d), Fraction(self.c2, d), Fraction(self.c3, d))

    def is_zero(self) -> bool:
        return not (self.c0 or self.c1 or self.c2 or self.c3)

    def is_rational(self) -> bool:
        return not (self.c1 or self.c2 or self.c3)

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self.text()} is not rational")
        return Fraction(self.c0, self.den)

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / 12)
        return (self.c0 + self.c1 * z + self.c2 * z * z + self.c3 * z ** 3) / self.den

    # -- arithmetic
    def __add__(self, other):
        if not isinstance(other, Cyclo):
            if isinstance(other, (int, Fraction)):
                other = Cyclo.rational(other)
            else:
                return NotImplemented
        d1, d2 = self.den, other.den
        if d1 == d2:
            return Cyclo(self.c0 + other.c0, self.c1 + other.c1, self.c2 + other.c2, self.c3 + other.c3, d1)
        return Cyclo(
            self.c0 * d2 + other.c0 * d1,
            self.c1 * d2 + other.c1 * d1,
            self.c2 * d2 + other.c2 * d1,
            self.c3 * d2 + other.c3 * d1,
            d1 * d2,
        )

    __radd__ = __add__

    def __neg__(self):
        return Cyclo._raw(-self.c0, -self.c1, -self.c2, -self.c3, self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, Cyclo):
            if isinstance(other, (int, Fraction)):
                other = Cyclo.rational(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Cyclo):
            if isinstance(other, int):
                return Cyclo(self.c0 * other, self.c1 * other, self.c2 * other, self.c3 * other, self.den)
            if isinstance(other, Fraction):
                n, d = other.numerator, other.denominator
                return Cyclo(self.c0 * n, self.c1 * n, self.c2 * n, self.c3 * n, self.den * d)
            return NotImplemented
        a0, a1, a2, a3 = self.c0, self.c1, self.c2, self.c3
        b0, b1, b2, b3 = other.c0, other.c1, other.c2, other.c3
        if not (a1 or a2 or a3):
            return Cyclo(a0 * b0, a0 * b1, a0 * b2, a0 * b3, self.den * other.den)
        if not (b1 or b2 or b3):
            return Cyclo(b0 * a0, b0 * a1, b0 * a2, b0 * a3, self.den * other.den)
        p0 = a0 * b0
        p1 = a0 * b1 + a1 * b0
        p2 = a0 * b2 + a1 * b1 + a2 * b0
        p3 = a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0
        p4 = a1 * b3 + a2 * b2 + a3 * b1
        p5 = a2 * b3 + a3 * b2
        p6 = a3 * b3
        # z^4 = z^2 - 1, z^5 = z^3 - z, z^6 = -1
        return Cyclo(p0 - p4 - p6, p1 - p5, p2 + p4, p3 + p5, self.den * other.den)

    __rmul__ = __mul__

    def galois(self, k: int) -> "Cyclo":
        """Image under the automorphism z -> z^k (k coprime to 12)."""
        if gcd(k, 12) != 1:
            raise ValueError("k must be a unit mod 12")
        out = [0, 0, 0, 0]
        for j, c in enumerate((self.c0, self.c1, self.c2, self.c3)):
            if c:
                v = _ZPOW[(j * k) % 12]
                for r in range(4):
                    out[r] += c * v[r]
        return Cyclo(*out, den=self.den)

    def conjugate(self) -> "Cyclo":
        return self.galois(11)

    def norm(self) -> Fraction:
        p = self * self.galois(5) * self.galois(7) * self.galois(11)
        return p.to_fraction()

    def inverse(self) -> "Cyclo":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in Q(zeta_12)")
        if self.is_rational():
            return Cyclo(self.den, 0, 0, 0, self.c0)
        others = self.galois(5) * self.galois(7) * self.galois(11)
        n = (self * others).to_fraction()
        return others * (1 / n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(zeta_12)")
            return self * (Fraction(1) / other)
        if isinstance(other, Cyclo):
            if other.is_rational():
                if other.c0 == 0:
                    raise ZeroDivisionError("division by zero in Q(zeta_12)")
                return self * Fraction(other.den, other.c0)
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self
        if n < 0:
            base, n = self.inverse(), -n
        result = ONE
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- comparison
    def __eq__(self, other):
        if isinstance(other, Cyclo):
            return (
                self.c0 == other.c0
                and self.c1 == other.c1
                and self.c2 == other.c2
                and self.c3 == other.c3
                and self.den == other.den
            )
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.c0, self.den) == other
        return NotImplemented

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self.c0, self.den))
            else:
                self._hash = hash((self.c0, self.c1, self.c2, self.c3, self.den))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def sort_key(self):
        return (self.c0 * 1.0 / self.den, self.c1 / self.den, self.c2 / self.den, self.c3 / self.den)

    # -- text
    def components(self) -> list[tuple[Fraction, str]]:
        """Nonzero coordinates in the display basis 1, rho, i, i*rho."""
        c0, c1, c2, c3 = self.coeffs
        # c0 + c1 z + c2 z^2 + c3 z^3 = u + v rho + w i + x i rho
        u, v, w, x = c0 + c2, c2, c3, -c1
        return [(q, s) for q, s in ((u, "1"), (v, "rho"), (w, "i"), (x, "i*rho")) if q]

    def text(self) -> str:
        comps = self.components()
        if not comps:
            return "0"
        return _join_terms([_term_text(q, [s] if s != "1" else []) for q, s in comps])

    def __repr__(self):
        return f"Cyclo({self.text()})"

    __str__ = text


def _coef_text(q: Fraction, has_symbols: bool) -> str:
    """Text of |q|; the sign is handled by the caller."""
    q = abs(q)
    if q.denominator == 1:
        if has_symbols and q == 1:
            return ""
        return str(q.numerator)
    return f"({q.numerator}/{q.denominator})"


def _term_text(q: Fraction, symbols: list[str]) -> tuple[bool, str]:
    c = _coef_text(q, bool(symbols))
    body = "*".join(([c] if c else []) + symbols)
    return q < 0, body


def _join_terms(terms: list[tuple[bool, str]]) -> str:
    out = []
    for idx, (neg, body) in enumerate(terms):
        if idx == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


ZERO = Cyclo()
ONE = Cyclo(1)
ZETA = Cyclo(0, 1)
RHO = Cyclo.zeta_power(4)
I = Cyclo.zeta_power(3)


def roots_of_unity(n: int = 12) -> list[Cyclo]:
    """The n-th roots of unity in Q(zeta_12), n dividing 12."""
    if 12 % n:
        raise ValueError("only divisors of 12 are available")
    step = 12 // n
    return [Cyclo.zeta_power(step * m) for m in range(n)]


def as_cyclo(x) -> Cyclo:
    if isinstance(x, Cyclo):
        return x
    if isinstance(x, (int, Fraction)):
        return Cyclo.rational(x)
    if isinstance(x, RatFunc):
        return x.const_value()
    raise TypeError(f"cannot convert {type(x).__name__} to Cyclo")


# ---------------------------------------------------------------------------
# univariate polynomials over a field, as tuples of coefficients (low -> high)

def is_zero(x) -> bool:
    if isinstance(x, int):
        return x == 0
    return x.is_zero()


def _trim(p: list) -> tuple:
    n = len(p)
    while n and is_zero(p[n - 1]):
        n -= 1
    return tuple(p[:n])


def padd(p: tuple, q: tuple) -> tuple:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for k, c in enumerate(q):
        out[k] = out[k] + c
    return _trim(out)


def pneg(p: tuple) -> tuple:
    return tuple(-c for c in p)


def psub(p: tuple, q: tuple) -> tuple:
    return padd(p, pneg(q))


def pscale(p: tuple, c) -> tuple:
    if is_zero(c):
        return ()
    return tuple(a * c for a in p)


def pmul(p: tuple, q: tuple) -> tuple:
    if not p or not q:
        return ()
    if len(p) == 1:
        return pscale(q, p[0])
    if len(q) == 1:
        return pscale(p, q[0])
    out = [None] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if is_zero(a):
            continue
        for j, b in enumerate(q):
            v = a * b
            k = i + j
            out[k] = v if out[k] is None else out[k] + v
    zero = p[0] - p[0]
    return _trim([zero if c is None else c for c in out])


def pdivmod(p: tuple, q: tuple) -> tuple[tuple, tuple]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    if len(p) < len(q):
        return (), p
    r = list(p)
    lead_inv = 1 / q[-1]
    dq = len(q) - 1
    quot = [None] * (len(p) - dq)
    for k in range(len(p) - 1, dq - 1, -1):
        c = r[k]
        if is_zero(c):
            quot[k - dq] = c
            continue
        f = c * lead_inv
        quot[k - dq] = f
        for j in range(dq + 1):
            r[k - dq + j] = r[k - dq + j] - f * q[j]
    return _trim(quot), _trim(r[:dq])


def pmonic(p: tuple) -> tuple:
    if not p:
        return p
    lead = p[-1]
    if lead == 1:
        return p
    inv = 1 / lead
    return tuple(c * inv for c in p[:-1]) + (lead * inv,)


def pgcd(p: tuple, q: tuple) -> tuple:
    """Monic gcd."""
    while q:
        p, q = q, pdivmod(p, q)[1]
    return pmonic(p)


def pderiv(p: tuple) -> tuple:
    return _trim([c * k for k, c in enumerate(p)][1:])


def peval(p: tuple, x):
    acc = None
    for c in reversed(p):
        acc = c if acc is None else acc * x + c
    return acc


def poly_text(p: tuple, var: str = "t") -> str:
    """Flat text of a polynomial with Cyclo coefficients, highest degree first."""
    terms = []
    for k in range(len(p) - 1, -1, -1):
        c = as_cyclo(p[k])
        if c.is_zero():
            continue
        vs = [] if k == 0 else [var if k == 1 else f"{var}^{k}"]
        for q, s in c.components():
            syms = ([] if s == "1" else [s]) + vs
            terms.append(_term_text(q, syms))
    if not terms:
        return "0"
    return _join_terms(terms)


# ---------------------------------------------------------------------------

_P_ONE = (ONE,)


class RatFunc:
    """Element of Q(zeta_12)(t): num/den with den monic and gcd(num, den) = 1."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Iterable = (), den: Iterable = _P_ONE, _reduced: bool = False):
        num = _trim([as_cyclo(c) for c in num])
        den = _trim([as_cyclo(c) for c in den])
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _make(cls, num: tuple, den: tuple):
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def t(cls) -> "RatFunc":
        return cls._make((ZERO, ONE), _P_ONE)

    @classmethod
    def const(cls, c) -> "RatFunc":
        c = as_cyclo(c)
        return cls._make(() if c.is_zero() else (c,), _P_ONE)

    @classmethod
    def poly(cls, coeffs: Iterable) -> "RatFunc":
        return cls._make(_trim([as_cyclo(c) for c in coeffs]), _P_ONE)

    # -- inspection
    def is_zero(self) -> bool:
        return not self.num

    def is_const(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def const_value(self) -> Cyclo:
        if not self.is_const():
            raise ValueError(f"{self.text()} depends on t")
        return self.num[0] if self.num else ZERO

    def is_poly(self) -> bool:
        return len(self.den) == 1

    def degree(self) -> int:
        """max(deg num, deg den)."""
        return max(len(self.num), len(self.den)) - 1

    # -- arithmetic
    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (Cyclo, int, Fraction)):
            return RatFunc.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num:
            return self
        if not self.num:
            return o
        if len(self.den) == 1 and len(o.den) == 1:
            return RatFunc._make(padd(self.num, o.num), _P_ONE)
        if self.den == o.den:
            return RatFunc._make(*_reduce(padd(self.num, o.num), self.den))
        g = pgcd(self.den, o.den)
        if len(g) == 1:
            num = padd(pmul(self.num, o.den), pmul(o.num, self.den))
            return RatFunc._make(*_reduce(num, pmul(self.den, o.den)))
        d1 = pdivmod(self.den, g)[0]
        d2 = pdivmod(o.den, g)[0]
        num = padd(pmul(self.num, d2), pmul(o.num, d1))
        return RatFunc._make(*_reduce(num, pmul(pmul(d1, d2), g)))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._make(pneg(self.num), self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (Cyclo, int, Fraction)):
            if other == 0:
                return RatFunc._make((), _P_ONE)
            return RatFunc._make(pscale(self.num, as_cyclo(other)), self.den)
        if not isinstance(other, RatFunc):
            return NotImplemented
        if not self.num or not other.num:
            return RatFunc._make((), _P_ONE)
        if len(self.den) == 1 and len(other.den) == 1:
            return RatFunc._make(pmul(self.num, other.num), _P_ONE)
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        g1 = pgcd(n1, d2) if len(d2) > 1 else _P_ONE
        g2 = pgcd(n2, d1) if len(d1) > 1 else _P_ONE
        if len(g1) > 1:
            n1 = pdivmod(n1, g1)[0]
            d2 = pdivmod(d2, g1)[0]
        if len(g2) > 1:
            n2 = pdivmod(n2, g2)[0]
            d1 = pdivmod(d1, g2)[0]
        num = pmul(n1, n2)
        den = pmul(d1, d2)
        lead = den[-1]
        if lead != 1:
            inv = 1 / lead
            num = pscale(num, inv)
            den = pscale(den, inv)
        return RatFunc._make(num, den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("division by the zero rational function")
        lead = self.num[-1]
        inv = 1 / lead
        return RatFunc._make(pscale(self.den, inv), pscale(self.num, inv))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self
        if n < 0:
            base, n = self.inverse(), -n
        result = RatFunc.const(1)
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- comparison
    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (Cyclo, int, Fraction)):
            if len(self.den) != 1 or len(self.num) > 1:
                return False
            return (self.num[0] if self.num else ZERO) == other
        return NotImplemented

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self._hash is None:
            if self.is_const():
                self._hash = hash(self.const_value())
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return bool(self.num)

    # -- evaluation and substitution
    def eval(self, t0) -> Cyclo:
        t0 = as_cyclo(t0)
        d = peval(self.den, t0)
        if d.is_zero():
            raise PoleError(f"denominator {poly_text(self.den)} vanishes at t = {t0.text()}")
        n = peval(self.num, t0) if self.num else ZERO
        return n / d

    def compose(self, g: "RatFunc") -> "RatFunc":
        """self(g(t))."""
        num = peval(tuple(RatFunc.const(c) for c in self.num), g) if self.num else RatFunc.const(0)
        den = peval(tuple(RatFunc.const(c) for c in self.den), g)
        return num / den

    def derivative(self) -> "RatFunc":
        n, d = self.num, self.den
        return RatFunc(psub(pmul(pderiv(n), d), pmul(n, pderiv(d))), pmul(d, d))

    # -- text
    def text(self) -> str:
        if len(self.den) == 1:
            return poly_text(self.num)
        return f"({poly_text(self.num)})/({poly_text(self.den)})"

    def __repr__(self):
        return f"RatFunc({self.text()})"

    __str__ = text


def _reduce(num: tuple, den: tuple) -> tuple[tuple, tuple]:
    if not num:
        return (), _P_ONE
    if len(den) > 1:
        g = pgcd(num, den)
        if len(g) > 1:
            num = pdivmod(num, g)[0]
            den = pdivmod(den, g)[0]
    lead = den[-1]
    if lead != 1:
        inv = 1 / lead
        num = pscale(num, inv)
        den = pscale(den, inv)
    return num, den


def field_zero(like) -> Union[Cyclo, RatFunc]:
    return RatFunc.const(0) if isinstance(like, RatFunc) else ZERO


def field_one(like) -> Union[Cyclo, RatFunc]:
    return RatFunc.const(1) if isinstance(like, RatFunc) else ONE


# ---------------------------------------------------------------------------

class MoebiusMap:
    """t -> (a t + b)/(c t + d) with constant coefficients in Q(zeta_12)."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        a, b, c, d = (as_cyclo(v) for v in (a, b, c, d))
        if (a * d - b * c).is_zero():
            raise ValueError("degenerate Moebius map (ad - bc = 0)")
        for lead in (a, b, c, d):
            if not lead.is_zero():
                break
        if lead != 1:
            inv = 1 / lead
            a, b, c, d = a * inv, b * inv, c * inv, d * inv
        self.a, self.b, self.c, self.d = a, b, c, d

    @classmethod
    def identity(cls) -> "MoebiusMap":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_ratfunc(cls, f: RatFunc) -> "MoebiusMap":
        if len(f.num) > 2 or len(f.den) > 2:
            raise ValueError(f"{f.text()} is not a Moebius transformation")
        n = list(f.num) + [ZERO] * (2 - len(f.num))
        d = list(f.den) + [ZERO] * (2 - len(f.den))
        return cls(n[1], n[0], d[1], d[0])

    @property
    def coefficients(self) -> tuple[Cyclo, Cyclo, Cyclo, Cyclo]:
        return (self.a, self.b, self.c, self.d)

    def compose(self, other: "MoebiusMap") -> "MoebiusMap":
        """self o other, i.e. t -> self(other(t))."""
        a, b, c, d = self.coefficients
        e, f, g, h = other.coefficients
        return MoebiusMap(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def __matmul__(self, other: "MoebiusMap") -> "MoebiusMap":
        return self.compose(other)

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(self.d, -self.b, -self.c, self.a)

    def as_ratfunc(self) -> RatFunc:
        return RatFunc((self.b, self.a), (self.d, self.c))

    def __call__(self, t):
        if isinstance(t, RatFunc):
            return (t * self.a + self.b) / (t * self.c + self.d)
        t = as_cyclo(t)
        den = self.c * t + self.d
        if den.is_zero():
            raise PoleError(f"Moebius map {self.text()} has a pole at t = {t.text()}")
        return (self.a * t + self.b) / den

    def order(self, limit: int = 1000) -> int:
        ident = MoebiusMap.identity()
        g = self
        for n in range(1, limit + 1):
            if g == ident:
                return n
            g = g.compose(self)
        raise ValueError("element order exceeds limit")

    def __eq__(self, other):
        if not isinstance(other, MoebiusMap):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def text(self) -> str:
        return f"t -> {self.as_ratfunc().text()}"

    def __repr__(self):
        return f"MoebiusMap({self.text()})"


# ---------------------------------------------------------------------------
# parsing of scalar / rational-function expressions

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def tokenize(text: str) -> list[tuple[str, str]]:
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        pos = m.end()
        if m.group(1):
            toks.append(("num", m.group(1)))
        elif m.group(2):
            toks.append(("id", m.group(2)))
        else:
            ch = m.group(3)
            if ch.isspace():
                continue
            if ch not in "+-*/^()":
                raise ValueError(f"unexpected character {ch!r} in {text!r}")
            toks.append(("op", ch))
    return toks


SCALAR_SYMBOLS = {"z12": ZETA, "rho": RHO, "i": I}


def parse_ratfunc(text: str) -> RatFunc:
    """Parse an expression in t, rho, i, z12 with +, -, *, /, ^ and integers."""
    from .wpoly import parse_expression

    value = parse_expression(text, allow_xyz=False)
    return value
