"""Univariate polynomials and rational functions over Q.

``Poly`` stores reduced Fractions, lowest degree first, with no trailing
zeros.  ``RatFunc`` keeps a monic denominator coprime to the numerator.
Factorization into irreducibles over Q is delegated to sympy.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from functools import lru_cache
from typing import Iterable, Sequence


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


class Poly:
    __slots__ = ("c", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        c = [_frac(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)
        self._hash = None

    # -- constructors -------------------------------------------------------------
    @classmethod
    def const(cls, a) -> "Poly":
        return cls([a])

    @classmethod
    def t(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def monomial(cls, a, k: int) -> "Poly":
        return cls([0] * k + [a])

    @classmethod
    def coerce(cls, x) -> "Poly":
        if isinstance(x, Poly):
            return x
        return cls([x])

    # -- basic properties ---------------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def is_const(self) -> bool:
        return len(self.c) <= 1

    @property
    def lc(self) -> Fraction:
        return self.c[-1] if self.c else Fraction(0)

    def coeff(self, k: int) -> Fraction:
        return self.c[k] if 0 <= k < len(self.c) else Fraction(0)

    def monic(self) -> "Poly":
        if not self.c:
            return self
        l = self.lc
        return Poly(x / l for x in self.c)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.c == other.c
        if isinstance(other, (int, Fraction)):
            return self.c == Poly([other]).c
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.c)
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.c)

    # -- arithmetic ---------------------------------------------------------------
    def __add__(self, other) -> "Poly":
        o = Poly.coerce(other)
        n = max(len(self.c), len(o.c))
        return Poly(self.coeff(i) + o.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-x for x in self.c)

    def __sub__(self, other) -> "Poly":
        return self + (-Poly.coerce(other))

    def __rsub__(self, other) -> "Poly":
        return Poly.coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, RatFunc):
            return NotImplemented
        o = Poly.coerce(other)
        if not self.c or not o.c:
            return Poly()
        out = [Fraction(0)] * (len(self.c) + len(o.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out, base = Poly([1]), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, a) -> "Poly":
        a = _frac(a)
        return Poly(a * x for x in self.c)

    def divmod(self, other) -> tuple["Poly", "Poly"]:
        o = Poly.coerce(other)
        if not o.c:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        q = [Fraction(0)] * max(0, len(r) - len(o.c) + 1)
        inv = 1 / o.lc
        do = o.degree
        for k in range(len(r) - 1, do - 1, -1):
            f = r[k] * inv
            if f:
                q[k - do] = f
                for j, b in enumerate(o.c):
                    r[k - do + j] -= f * b
        return Poly(q), Poly(r[:do] if do > 0 else [])

    def __floordiv__(self, other) -> "Poly":
        return self.divmod(other)[0]

    def __mod__(self, other) -> "Poly":
        return self.divmod(other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("division is not exact")
        return q

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(1 / _frac(other))
        return RatFunc(self, Poly.coerce(other))

    def __rtruediv__(self, other):
        return RatFunc(Poly.coerce(other), self)

    # -- calculus and evaluation ---------------------------------------------------------
    def __call__(self, x):
        acc = 0 * x if not isinstance(x, (int, Fraction)) else Fraction(0)
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def deriv(self) -> "Poly":
        return Poly(i * a for i, a in enumerate(self.c) if i)

    def compose(self, other: "Poly") -> "Poly":
        acc = Poly()
        for a in reversed(self.c):
            acc = acc * other + a
        return acc

    def reverse(self, n: int) -> "Poly":
        """t^n f(1/t); requires n >= degree."""
        if n < self.degree:
            raise ValueError("reversal degree too small")
        c = list(self.c) + [Fraction(0)] * (n + 1 - len(self.c))
        return Poly(reversed(c))

    # -- valuations ---------------------------------------------------------------
    def valuation(self, p: "Poly") -> int | float:
        """Multiplicity of the irreducible p in self (inf for zero)."""
        if not self.c:
            return float("inf")
        k, f = 0, self
        while True:
            q, r = f.divmod(p)
            if r:
                return k
            f, k = q, k + 1

    def content_free(self) -> "Poly":
        return self.monic()

    # -- display -------------------------------------------------------------------------
    def to_list(self) -> list[str]:
        return [_fstr(x) for x in self.c]

    @classmethod
    def from_list(cls, xs: Sequence) -> "Poly":
        return cls(_frac(x) for x in xs)

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        return self.pretty("t")

    def pretty(self, var: str = "t") -> str:
        if not self.c:
            return "0"
        terms = []
        for k in range(len(self.c) - 1, -1, -1):
            a = self.c[k]
            if not a:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if mono and abs(a) == 1:
                s = mono
            elif mono:
                s = f"{_fstr(abs(a))}*{mono}"
            else:
                s = _fstr(abs(a))
            terms.append(("-" if a < 0 else "+", s))
        head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        return head + "".join(f" {sg} {s}" for sg, s in terms[1:])


def _fstr(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def pgcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero if both are zero).

    Euclid over Q blows up coefficients on large inputs, so beyond small
    degrees the gcd of the denominator-cleared integer polynomials is taken
    with sympy's heuristic integer gcd.
    """
    if min(a.degree, b.degree) <= 2:
        while b:
            a, b = b, a % b
        return a.monic()
    from sympy.polys.domains import ZZ
    from sympy.polys.euclidtools import dup_gcd
    g = dup_gcd(_zz_coeffs(a, ZZ), _zz_coeffs(b, ZZ), ZZ)
    return Poly([int(x) for x in reversed(g)]).monic()


def _zz_coeffs(p: Poly, dom) -> list:
    d = 1
    for x in p.c:
        d = d * x.denominator // gcd(d, x.denominator)
    return [dom(int(x * d)) for x in reversed(p.c)]


def xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """(g, s, t) with s a + t b = g, g monic."""
    r0, r1 = a, b
    s0, s1 = Poly([1]), Poly()
    t0, t1 = Poly(), Poly([1])
    while r1:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    l = r0.lc
    return r0.scale(1 / l), s0.scale(1 / l), t0.scale(1 / l)


class RatFunc:
    """Element of Q(t) as num/den with den monic and gcd 1."""
    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = Poly.coerce(num)
        den = Poly([1]) if den is None else Poly.coerce(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            self.num, self.den = Poly(), Poly([1])
            return
        if den.degree > 0:
            g = pgcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
        l = den.lc
        if l != 1:
            num, den = num.scale(1 / l), den.scale(1 / l)
        self.num, self.den = num, den

    @classmethod
    def coerce(cls, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        return cls(Poly.coerce(x))

    def is_zero(self) -> bool:
        return not self.num

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def __eq__(self, other) -> bool:
        if isinstance(other, (RatFunc, Poly, int, Fraction)):
            o = RatFunc.coerce(other)
            return self.num == o.num and self.den == o.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        o = RatFunc.coerce(other)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        r = RatFunc.__new__(RatFunc)
        r.num, r.den = -self.num, self.den
        return r

    def __sub__(self, other):
        return self + (-RatFunc.coerce(other))

    def __rsub__(self, other):
        return RatFunc.coerce(other) - self

    def __mul__(self, other):
        o = RatFunc.coerce(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RatFunc.coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return RatFunc(self.den, self.num) ** (-k)
        return RatFunc(self.num ** k, self.den ** k)

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError("pole of rational function")
        return self.num(x) / d

    def valuation(self, p: Poly):
        return self.num.valuation(p) - self.den.valuation(p)

    def degree(self) -> int:
        """deg num - deg den (minus the valuation at infinity)."""
        return self.num.degree - self.den.degree

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        return self.pretty("t")

    def pretty(self, var: str = "t") -> str:
        if self.den.degree == 0:
            return self.num.pretty(var)
        return f"({self.num.pretty(var)})/({self.den.pretty(var)})"


# -- factorization -------------------------------------------------------------------

def _to_sympy(p: Poly):
    import sympy
    t = sympy.Symbol("t")
    return sympy.Poly([sympy.Rational(x.numerator, x.denominator) for x in reversed(p.c)], t, domain="QQ")


@lru_cache(maxsize=4096)
def _factor_cached(c: tuple) -> tuple[tuple[tuple, int], ...]:
    p = Poly(c)
    _, facs = _to_sympy(p).factor_list()
    out = []
    for f, m in facs:
        coeffs = [Fraction(int(x.p), int(x.q)) for x in reversed(f.all_coeffs())]
        out.append((Poly(coeffs).monic().c, int(m)))
    out.sort(key=lambda fm: (len(fm[0]), fm[0]))
    return tuple(out)


def factor(p: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factors over Q with multiplicities (constants dropped)."""
    if p.degree <= 0:
        return []
    return [(Poly(c), m) for c, m in _factor_cached(p.c)]


def square_free_part(p: Poly) -> Poly:
    if p.degree <= 0:
        return Poly([1])
    return p.exact_div(pgcd(p, p.deriv())).monic()


class ResidueField:
    """Q[t]/(p) for a monic irreducible p; elements are reduced Polys."""

    def __init__(self, p: Poly):
        self.p = p.monic()

    @property
    def degree(self) -> int:
        return self.p.degree

    def reduce(self, a) -> Poly:
        if isinstance(a, RatFunc):
            return self.reduce(a.num) * self.inv(a.den)
        return Poly.coerce(a) % self.p

    def is_zero(self, a) -> bool:
        return not self.reduce(a)

    def inv(self, a) -> Poly:
        a = Poly.coerce(a) % self.p
        if not a:
            raise ZeroDivisionError("zero has no inverse in the residue field")
        g, s, _ = xgcd(a, self.p)
        return s % self.p

    def mul(self, a, b) -> Poly:
        return (Poly.coerce(a) * Poly.coerce(b)) % self.p

    def div(self, a, b) -> Poly:
        return self.mul(a, self.inv(b))
