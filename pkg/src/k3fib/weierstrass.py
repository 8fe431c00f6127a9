"""Weierstrass models over Q(t), coordinate changes and places of P^1."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .poly import Poly, RatFunc, factor

Coeff = Poly | RatFunc


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class Place:
    """A place of Q(t): a monic irreducible polynomial, or infinity when p is None."""
    p: Poly | None

    @property
    def is_infinity(self) -> bool:
        return self.p is None

    @property
    def degree(self) -> int:
        return 1 if self.p is None else self.p.degree

    def label(self, var: str = "t") -> str:
        if self.p is None:
            return "inf"
        if self.p.degree == 1:
            root = -self.p.coeff(0)
            return str(root.numerator) if root.denominator == 1 else f"{root.numerator}/{root.denominator}"
        return self.p.pretty(var)

    def sort_key(self):
        if self.p is None:
            return (1, 0, ())
        if self.p.degree == 1:
            return (0, 1, (-self.p.coeff(0),))
        return (0, self.p.degree, tuple(reversed(self.p.c)))


INFINITY = Place(None)


@dataclass(frozen=True)
class Transform:
    """x = u^2 x' + r,  y = u^3 y' + s u^2 x' + t."""
    u: Poly
    r: Poly
    s: Poly
    t: Poly

    @classmethod
    def identity(cls) -> "Transform":
        one, zero = Poly([1]), Poly()
        return cls(one, zero, zero, zero)

    def then(self, other: "Transform") -> "Transform":
        """Compose: apply self, then ``other`` to the resulting model."""
        u1, r1, s1, t1 = self.u, self.r, self.s, self.t
        u2, r2, s2, t2 = other.u, other.r, other.s, other.t
        return Transform(u1 * u2, r1 + u1 * u1 * r2, s1 + u1 * s2,
                         t1 + u1 ** 3 * t2 + s1 * u1 * u1 * r2)

    def point(self, x: RatFunc, y: RatFunc) -> tuple[RatFunc, RatFunc]:
        """Coordinates of a point in the transformed model."""
        u2 = RatFunc(self.u * self.u)
        xr = RatFunc.coerce(x) - self.r
        xn = xr / u2
        yn = (RatFunc.coerce(y) - xr * self.s - self.t) / RatFunc(self.u ** 3)
        return xn, yn


@dataclass(frozen=True)
class WeierstrassModel:
    """y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6 with a_i in Q[t]."""
    a1: Poly
    a2: Poly
    a3: Poly
    a4: Poly
    a6: Poly

    @classmethod
    def from_lists(cls, coeffs) -> "WeierstrassModel":
        return cls(*(Poly.from_list(c) for c in coeffs))

    @property
    def a(self) -> tuple[Poly, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @cached_property
    def b2(self) -> Poly:
        return self.a1 * self.a1 + self.a2.scale(4)

    @cached_property
    def b4(self) -> Poly:
        return self.a1 * self.a3 + self.a4.scale(2)

    @cached_property
    def b6(self) -> Poly:
        return self.a3 * self.a3 + self.a6.scale(4)

    @cached_property
    def b8(self) -> Poly:
        a1, a2, a3, a4, a6 = self.a
        return (a1 * a1 * a6 + a2 * a6.scale(4) - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4)

    @cached_property
    def c4(self) -> Poly:
        return self.b2 * self.b2 - self.b4.scale(24)

    @cached_property
    def c6(self) -> Poly:
        return -(self.b2 ** 3) + (self.b2 * self.b4).scale(36) - self.b6.scale(216)

    @cached_property
    def disc(self) -> Poly:
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        d = -(b2 * b2 * b8) - (b4 ** 3).scale(8) - (b6 * b6).scale(27) + (b2 * b4 * b6).scale(9)
        return d

    def invariants(self) -> dict[str, Poly]:
        return {"b2": self.b2, "b4": self.b4, "b6": self.b6, "b8": self.b8,
                "c4": self.c4, "c6": self.c6, "disc": self.disc}

    def check_identities(self) -> bool:
        ok1 = self.b8.scale(4) == self.b2 * self.b6 - self.b4 * self.b4
        ok2 = self.disc.scale(1728) == self.c4 ** 3 - self.c6 * self.c6
        return ok1 and ok2

    def transform(self, tr: Transform) -> "WeierstrassModel":
        u, r, s, t = tr.u, tr.r, tr.s, tr.t
        a1, a2, a3, a4, a6 = self.a
        n1 = a1 + s.scale(2)
        n2 = a2 - s * a1 + r.scale(3) - s * s
        n3 = a3 + r * a1 + t.scale(2)
        n4 = a4 - s * a3 + (r * a2).scale(2) - (t + r * s) * a1 + (r * r).scale(3) - (s * t).scale(2)
        n6 = a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1
        if u == Poly([1]):
            return WeierstrassModel(n1, n2, n3, n4, n6)
        return WeierstrassModel(n1.exact_div(u), n2.exact_div(u ** 2), n3.exact_div(u ** 3),
                                n4.exact_div(u ** 4), n6.exact_div(u ** 6))

    def contains(self, x, y) -> bool:
        x, y = RatFunc.coerce(x), RatFunc.coerce(y)
        a1, a2, a3, a4, a6 = self.a
        lhs = y * y + x * y * a1 + y * a3
        rhs = x * x * x + x * x * a2 + x * a4 + a6
        return lhs == rhs

    # -- places ------------------------------------------------------------------
    def finite_places(self) -> list[Place]:
        if not self.disc:
            raise ModelError("discriminant vanishes identically")
        return [Place(p) for p, _ in factor(self.disc)]

    @cached_property
    def infinity_weight(self) -> int:
        """Smallest m with deg a_i <= i m for every i."""
        m = 0
        for i, ai in zip((1, 2, 3, 4, 6), self.a):
            if ai:
                m = max(m, -(-ai.degree // i))
        return m

    def at_infinity(self) -> "WeierstrassModel":
        """Model in u = 1/t: a_i'(u) = u^(i m) a_i(1/u)."""
        m = self.infinity_weight
        return WeierstrassModel(*(ai.reverse(i * m) if ai else Poly()
                                  for i, ai in zip((1, 2, 3, 4, 6), self.a)))

    def point_at_infinity(self, x, y) -> tuple[RatFunc, RatFunc]:
        """Point coordinates in the model of ``at_infinity``."""
        m = self.infinity_weight
        return invert_variable(RatFunc.coerce(x), 2 * m), invert_variable(RatFunc.coerce(y), 3 * m)

    def local_model(self, place: Place) -> "WeierstrassModel":
        return self.at_infinity() if place.is_infinity else self

    def local_point(self, place: Place, x, y):
        return self.point_at_infinity(x, y) if place.is_infinity else (RatFunc.coerce(x), RatFunc.coerce(y))

    def scaled(self, d: Poly) -> "WeierstrassModel":
        """Model after x -> d^2 x, y -> d^3 y (a_i -> d^i a_i)."""
        return WeierstrassModel(*(ai * d ** i for i, ai in zip((1, 2, 3, 4, 6), self.a)))


def invert_variable(f: RatFunc, k: int) -> RatFunc:
    """u^k f(1/u)."""
    n, d = f.num, f.den
    if not n:
        return f
    num = n.reverse(n.degree)
    den = d.reverse(d.degree)
    shift = k - n.degree + d.degree
    if shift >= 0:
        num = num * Poly.monomial(1, shift)
    else:
        den = den * Poly.monomial(1, -shift)
    return RatFunc(num, den)


def normalize_rational(coeffs: list[RatFunc]) -> tuple[WeierstrassModel, Poly]:
    """Clear denominators of rational a_i by x -> d^2 x, y -> d^3 y.

    Returns the polynomial model and d (the lcm of the needed denominators,
    taken as small as possible: each a_i needs den(a_i) | d^i).
    """
    from .poly import factor as _factor
    d = Poly([1])
    need: dict[Poly, int] = {}
    for i, c in zip((1, 2, 3, 4, 6), coeffs):
        c = RatFunc.coerce(c)
        for p, m in _factor(c.den):
            need[p] = max(need.get(p, 0), -(-m // i))
    for p, e in sorted(need.items(), key=lambda pe: (pe[0].degree, pe[0].c)):
        d = d * p ** e
    out = []
    for i, c in zip((1, 2, 3, 4, 6), coeffs):
        v = RatFunc.coerce(c) * RatFunc(d ** i)
        if not v.is_poly():
            raise ModelError("normalization failed to clear denominators")
        out.append(v.num)
    return WeierstrassModel(*out), d
