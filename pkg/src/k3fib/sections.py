"""Sections of an elliptic surface: group law, torsion, component index, heights.

Heights follow h(P) = 4 + 2(P.O) - sum_v contr_v(P) on a K3 surface.  Both
(P.O) and contr_v are computed place by place on a local minimal model
(from Tate's algorithm); a place of degree d counts d times.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from . import exact as ex
from .poly import Poly, RatFunc, factor
from .tate import KodairaFiber, all_fibers, tate
from .weierstrass import INFINITY, Place, WeierstrassModel

INF = float("inf")


@dataclass(frozen=True)
class SectionPoint:
    """A point (x, y) over Q(t); ``None`` coordinates mean the zero section."""
    x: RatFunc | None
    y: RatFunc | None

    @classmethod
    def zero(cls) -> "SectionPoint":
        return cls(None, None)

    @classmethod
    def of(cls, x, y) -> "SectionPoint":
        return cls(RatFunc.coerce(x), RatFunc.coerce(y))

    @property
    def is_zero(self) -> bool:
        return self.x is None

    def __str__(self):
        return "O" if self.is_zero else f"({self.x}, {self.y})"


O = SectionPoint.zero()


class NonTorsion(int):
    """Marker returned by ``torsion_order`` for points of infinite order."""

    def __new__(cls):
        return super().__new__(cls, 0)

    def __repr__(self):
        return "NonTorsion"


def negate(m: WeierstrassModel, P: SectionPoint) -> SectionPoint:
    if P.is_zero:
        return P
    return SectionPoint(P.x, -P.y - P.x * m.a1 - m.a3)


def add(m: WeierstrassModel, P: SectionPoint, Q: SectionPoint) -> SectionPoint:
    if P.is_zero:
        return Q
    if Q.is_zero:
        return P
    a1, a2, a3, a4, a6 = m.a
    if P.x == Q.x:
        if P.y + Q.y + Q.x * a1 + a3 == 0:
            return O
        num = P.x * P.x * 3 + P.x * a2 * 2 + a4 - P.y * a1
        den = P.y * 2 + P.x * a1 + a3
    else:
        num = Q.y - P.y
        den = Q.x - P.x
    lam = num / den
    nu = P.y - lam * P.x
    x3 = lam * lam + lam * a1 - a2 - P.x - Q.x
    y3 = -(lam + a1) * x3 - nu - a3
    return SectionPoint(x3, y3)


def multiply(m: WeierstrassModel, P: SectionPoint, k: int) -> SectionPoint:
    if k < 0:
        return multiply(m, negate(m, P), -k)
    out, base = O, P
    while k:
        if k & 1:
            out = add(m, out, base)
        base = add(m, base, base)
        k >>= 1
    return out


def on_curve(m: WeierstrassModel, P: SectionPoint) -> bool:
    return P.is_zero or m.contains(P.x, P.y)


# -- local data ---------------------------------------------------------------

@dataclass(frozen=True)
class LocalData:
    place: Place
    fiber: KodairaFiber
    x: RatFunc
    y: RatFunc

    def v(self, f: RatFunc):
        p = Poly([0, 1]) if self.place.is_infinity else self.place.p
        return f.valuation(p) if not f.is_zero() else INF


@dataclass(frozen=True)
class ComponentHit:
    """Which component of the fiber at a place a section meets."""
    place: Place
    fiber: str
    component: str      # "0" for the identity component, an index for I_n, or near/far/other
    contr: Fraction


# correction terms by (fiber symbol, component class); I_n and I_n* far depend on n
CONTR_TABLE = {
    ("III", "other"): Fraction(1, 2),
    ("IV", "other"): Fraction(2, 3),
    ("IV*", "other"): Fraction(4, 3),
    ("III*", "other"): Fraction(3, 2),
    ("In*", "near"): Fraction(1),
}


def table_contr(symbol: str, n: int, component: str) -> Fraction:
    if component == "0":
        return Fraction(0)
    if symbol == "In":
        j = int(component)
        return Fraction(j * (n - j), n)
    if symbol == "In*" and component == "far":
        return 1 + Fraction(n, 4)
    return CONTR_TABLE[(symbol, component)]


class Surface:
    """A Weierstrass model with cached fibers and local models."""

    def __init__(self, model: WeierstrassModel):
        self.model = model

    @cached_property
    def fibers(self) -> list[KodairaFiber]:
        return all_fibers(self.model)

    @cached_property
    def _fiber_at(self) -> dict:
        return {f.place: f for f in self.fibers}

    def fiber(self, place: Place) -> KodairaFiber:
        f = self._fiber_at.get(place)
        return f if f is not None else tate(self.model, place)

    def local(self, place: Place, P: SectionPoint) -> LocalData:
        f = self.fiber(place)
        x, y = self.model.local_point(place, P.x, P.y)
        xm, ym = f.transform.point(x, y)
        return LocalData(place, f, xm, ym)

    def pole_places(self, P: SectionPoint) -> list[Place]:
        """Places where x(P) may have a pole on some local model."""
        places = {f.place for f in self.fibers}
        places |= {Place(p) for p, _ in factor(P.x.den)}
        places.add(INFINITY)
        return sorted(places, key=lambda pl: pl.sort_key())

    # -- intersection with the zero section -------------------------------------
    def dot_zero_local(self, place: Place, P: SectionPoint) -> Fraction:
        ld = self.local(place, P)
        return Fraction(max(0, -ld.v(ld.x)), 2)

    def dot_zero(self, P: SectionPoint) -> Fraction:
        """(P.O), summed over places with degree weights."""
        if P.is_zero:
            raise ValueError("(O.O) is not defined here")
        return sum((pl.degree * self.dot_zero_local(pl, P) for pl in self.pole_places(P)), Fraction(0))

    # -- components ----------------------------------------------------------------
    def component(self, place: Place, P: SectionPoint) -> ComponentHit:
        f = self.fiber(place)
        if P.is_zero:
            return ComponentHit(place, f.name, "0", Fraction(0))
        ld = self.local(place, P)
        c, comp = _local_correction(ld)
        expected = table_contr(f.symbol, f.n, comp) if f.symbol not in ("I0", "II", "II*") or comp == "0" else None
        if expected is None or expected != c:
            raise ArithmeticError(f"component data mismatch at {place.label()}: {comp} vs {c}")
        return ComponentHit(place, f.name, comp, c)

    def component_index(self, place: Place, P: SectionPoint):
        """Index j (0 <= j <= n/2) for I_n fibers, else the component class."""
        hit = self.component(place, P)
        return int(hit.component) if hit.component.isdigit() else hit.component

    # -- heights -------------------------------------------------------------------------
    def height(self, P: SectionPoint) -> Fraction:
        if P.is_zero:
            return Fraction(0)
        h = Fraction(4) + 2 * self.dot_zero(P)
        for f in self.fibers:
            if f.reducible:
                h -= f.place.degree * self.component(f.place, P).contr
        return h

    def pairing(self, P: SectionPoint, Q: SectionPoint) -> Fraction:
        s = add(self.model, P, Q)
        return (self.height(s) - self.height(P) - self.height(Q)) / 2

    def height_matrix(self, points) -> list[list[Fraction]]:
        pts = list(points)
        n = len(pts)
        hs = [self.height(p) for p in pts]
        out = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            out[i][i] = hs[i]
            for j in range(i + 1, n):
                s = add(self.model, pts[i], pts[j])
                v = (self.height(s) - hs[i] - hs[j]) / 2
                out[i][j] = out[j][i] = v
        return out

    def regulator(self, points) -> Fraction:
        return Fraction(ex.determinant(self.height_matrix(points)))

    # -- torsion ---------------------------------------------------------------------------
    def torsion_order(self, P: SectionPoint, bound: int = 12):
        """Order of P if at most ``bound``, else NonTorsion.

        Torsion sections never meet the zero section, so the search stops
        as soon as a multiple does.
        """
        Q = P
        for k in range(1, bound + 1):
            if Q.is_zero:
                return k
            if self.dot_zero(Q) > 0:
                return NonTorsion()
            Q = add(self.model, Q, P)
        return NonTorsion()

    def trivial_lattice_det(self) -> int:
        d = 1
        for f in self.fibers:
            if f.root_type:
                d *= _root_det(f.root_type) ** f.place.degree
        return d


def _root_det(label: str) -> int:
    fam, n = label[0], int(label[1:])
    if fam == "A":
        return n + 1
    if fam == "D":
        return 4
    return {6: 3, 7: 2, 8: 1}[n]


def _local_correction(ld: LocalData) -> tuple[Fraction, str]:
    """Correction term and component class of a section on a minimal model.

    Integral points whose reduction is nonsingular meet the identity
    component.  Otherwise the multiplicative case uses min(v(psi2), N/2) and
    the additive case compares v(psi3) with 3 v(psi2).
    """
    f = ld.fiber
    m = f.model
    x, y = ld.x, ld.y
    if ld.v(x) < 0:
        return Fraction(0), "0"
    a1, a2, a3, a4, a6 = m.a
    fx = x * x * 3 + x * a2 * 2 + a4 - y * a1
    psi2 = y * 2 + x * a1 + a3
    if ld.v(fx) <= 0 or ld.v(psi2) <= 0:
        return Fraction(0), "0"
    vd = f.valuations[2]
    if f.valuations[0] == 0:
        N = vd
        j = min(ld.v(psi2), N // 2)
        j = int(j)
        return Fraction(j * (N - j), N), str(j)
    psi3 = (x ** 4) * 3 + (x ** 3) * m.b2 + (x * x) * m.b4 * 3 + x * m.b6 * 3 + m.b8
    v2, v3 = ld.v(psi2), ld.v(psi3)
    if v3 >= 3 * v2:
        c = Fraction(2 * v2, 3)
    else:
        c = Fraction(v3, 4)
    return c, _classify_component(f, c)


def _classify_component(f: KodairaFiber, c: Fraction) -> str:
    if f.symbol == "In*":
        if c == 1:
            return "near"
        if c == 1 + Fraction(f.n, 4):
            return "far"
        return "?"
    if (f.symbol, "other") in CONTR_TABLE and CONTR_TABLE[(f.symbol, "other")] == c:
        return "other"
    return "?"
