"""Tate's algorithm at a place of Q(t), in residue characteristic zero.

The residue field at a finite place p is Q[t]/(p).  Coordinate changes use
polynomial r, s, t so the model stays in Q[t]; the cumulative change is
kept so that sections can be moved to the local minimal model.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .poly import Poly, ResidueField
from .weierstrass import INFINITY, ModelError, Place, Transform, WeierstrassModel

_ONE = Poly([1])
_ZERO = Poly()


@dataclass(frozen=True)
class KodairaFiber:
    place: Place
    symbol: str          # I0, In, In*, II, III, IV, IV*, III*, II*
    n: int               # the n of I_n / I_n*, else 0
    model: WeierstrassModel = None      # local minimal model
    transform: Transform = None         # from the local model to ``model``
    valuations: tuple = ()              # (v(c4), v(c6), v(disc)) on ``model``
    rescaled: int = 0                   # how many times the input was non-minimal

    @property
    def name(self) -> str:
        if self.symbol == "In":
            return f"I{self.n}"
        if self.symbol == "In*":
            return f"I{self.n}*"
        return self.symbol

    @property
    def euler(self) -> int:
        return euler_number(self.symbol, self.n)

    @property
    def root_type(self) -> str | None:
        return root_type(self.symbol, self.n)

    @property
    def components(self) -> int:
        return component_count(self.symbol, self.n)

    @property
    def reducible(self) -> bool:
        return self.root_type is not None


def euler_number(symbol: str, n: int = 0) -> int:
    return {"I0": 0, "In": n, "In*": n + 6, "II": 2, "III": 3, "IV": 4,
            "IV*": 8, "III*": 9, "II*": 10}[symbol]


def root_type(symbol: str, n: int = 0) -> str | None:
    if symbol == "In":
        return f"A{n - 1}" if n >= 2 else None
    if symbol == "In*":
        return f"D{n + 4}"
    return {"III": "A1", "IV": "A2", "IV*": "E6", "III*": "E7", "II*": "E8"}.get(symbol)


def component_count(symbol: str, n: int = 0) -> int:
    if symbol == "In":
        return max(n, 1)
    if symbol == "In*":
        return n + 5
    return {"I0": 1, "II": 1, "III": 2, "IV": 3, "IV*": 7, "III*": 8, "II*": 9}[symbol]


def parse_kodaira(name: str) -> tuple[str, int]:
    """'I8' -> ('In', 8), 'I0*' -> ('In*', 0), 'IV*' -> ('IV*', 0)."""
    name = name.strip()
    if name in ("II", "III", "IV", "IV*", "III*", "II*"):
        return name, 0
    if name.startswith("I") and name.endswith("*"):
        return "In*", int(name[1:-1])
    if name.startswith("I") and name[1:].isdigit():
        k = int(name[1:])
        return ("I0", 0) if k == 0 else ("In", k)
    raise ValueError(f"unknown Kodaira symbol {name!r}")


def kodaira_name(symbol: str, n: int) -> str:
    return KodairaFiber(INFINITY, symbol, n).name


def classify_by_valuations(vc4, vc6, vd) -> tuple[str, int]:
    """Kodaira type of a minimal model from (v(c4), v(c6), v(disc)), residue char 0."""
    if vd == 0:
        return "I0", 0
    if vc4 == 0:
        return "In", vd
    if vd == 6 and vc4 >= 2 and vc6 >= 3:
        return "In*", 0
    if vd > 6 and vc4 == 2 and vc6 == 3:
        return "In*", vd - 6
    table = {2: "II", 3: "III", 4: "IV", 8: "IV*", 9: "III*", 10: "II*"}
    if vd in table:
        return table[vd], 0
    raise ModelError(f"impossible valuations {(vc4, vc6, vd)}")


class _State:
    def __init__(self, model: WeierstrassModel, p: Poly):
        self.m = model
        self.p = p
        self.K = ResidueField(p)
        self.tr = Transform.identity()

    def v(self, f: Poly):
        return f.valuation(self.p)

    def apply(self, u=_ONE, r=_ZERO, s=_ZERO, t=_ZERO):
        step = Transform(Poly.coerce(u), Poly.coerce(r), Poly.coerce(s), Poly.coerce(t))
        self.m = self.m.transform(step)
        self.tr = self.tr.then(step)

    def red(self, f) -> Poly:
        return self.K.reduce(f)

    def div_red(self, f: Poly, k: int) -> Poly:
        """(f / p^k) mod p; f must be divisible by p^k."""
        return self.red(f.exact_div(self.p ** k)) if k else self.red(f)


def tate(model: WeierstrassModel, place: Place) -> KodairaFiber:
    """Kodaira type of the fiber at ``place`` together with a local minimal model."""
    local = model.local_model(place)
    p = Poly([0, 1]) if place.is_infinity else place.p
    st = _State(local, p)
    K = st.K
    half = Fraction(1, 2)
    rescaled = 0
    while True:
        m = st.m
        vd = st.v(m.disc)
        if vd == 0:
            return _finish(st, place, "I0", 0, rescaled)
        # move the singular point of the reduction to (0, 0)
        if st.v(m.c4) == 0:
            x0 = K.mul(-(K.div(m.c6, m.c4) + K.reduce(m.b2)), Fraction(1, 12))
        else:
            x0 = K.reduce(m.b2.scale(Fraction(-1, 12)))
        y0 = K.reduce((m.a1 * x0 + m.a3).scale(-half))
        st.apply(r=x0, t=y0)
        m = st.m
        if not all(K.is_zero(a) for a in (m.a3, m.a4, m.a6)):
            raise ModelError("singular point translation failed")
        if st.v(m.b2) == 0:
            return _finish(st, place, "In", vd, rescaled)
        if st.v(m.a6) < 2:
            return _finish(st, place, "II", 0, rescaled)
        if st.v(m.b8) < 3:
            return _finish(st, place, "III", 0, rescaled)
        if st.v(m.b6) < 3:
            return _finish(st, place, "IV", 0, rescaled)
        # a1 = a3 = 0 exactly
        st.apply(s=m.a1.scale(-half), t=m.a3.scale(-half))
        m = st.m
        if st.v(m.a2) < 1 or st.v(m.a4) < 2 or st.v(m.a6) < 3:
            raise ModelError("unexpected valuations after step 6")
        b, c, d = st.div_red(m.a2, 1), st.div_red(m.a4, 2), st.div_red(m.a6, 3)
        mul = K.mul
        disc3 = (mul(mul(b, b), mul(c, c)) - mul(mul(c, c), c).scale(4) - mul(mul(b, b), mul(b, d)).scale(4)
                 - mul(d, d).scale(27) + mul(mul(b, c), d).scale(18)) % p
        if disc3:
            return _finish(st, place, "In*", 0, rescaled)
        h = K.reduce(mul(b, b) - c.scale(3))
        if h:
            root = K.div(d.scale(9) - mul(b, c), h.scale(2))
            st.apply(r=p * root)
            n = _in_star(st)
            return _finish(st, place, "In*", n, rescaled)
        root = K.reduce(b.scale(Fraction(-1, 3)))
        st.apply(r=p * root)
        m = st.m
        a3t, a6t = st.div_red(m.a3, 2), st.div_red(m.a6, 4)
        if K.reduce(mul(a3t, a3t) + a6t.scale(4)):
            return _finish(st, place, "IV*", 0, rescaled)
        st.apply(t=(p ** 2) * K.reduce(a3t.scale(-half)))
        m = st.m
        if st.v(m.a4) < 4:
            return _finish(st, place, "III*", 0, rescaled)
        if st.v(m.a6) < 6:
            return _finish(st, place, "II*", 0, rescaled)
        st.apply(u=p)
        rescaled += 1


def _in_star(st: _State) -> int:
    """Subprocedure for a double root: returns n of I_n*."""
    p, K = st.p, st.K
    half = Fraction(1, 2)
    ix = iy = 3
    while True:
        m = st.m
        xa3 = st.div_red(m.a3, iy - 1)
        xa6 = st.div_red(m.a6, ix - 1 + iy - 1)
        if K.reduce(K.mul(xa3, xa3) + xa6.scale(4)):
            break
        st.apply(t=p ** (iy - 1) * K.reduce(xa3.scale(-half)))
        iy += 1
        m = st.m
        xa2 = st.div_red(m.a2, 1)
        xa4 = st.div_red(m.a4, 1 + ix - 1)
        xa6 = st.div_red(m.a6, ix - 1 + iy - 1)
        if K.reduce(K.mul(xa4, xa4) - K.mul(xa2, xa6).scale(4)):
            break
        st.apply(r=p ** (ix - 1) * K.div(-xa4, xa2.scale(2)))
        ix += 1
    return ix + iy - 5


def _finish(st: _State, place: Place, symbol: str, n: int, rescaled: int) -> KodairaFiber:
    m = st.m
    vals = (st.v(m.c4), st.v(m.c6), st.v(m.disc))
    check = classify_by_valuations(*vals)
    if check != (symbol, n):
        raise ModelError(f"Tate gave {symbol}{n} but valuations {vals} give {check}")
    return KodairaFiber(place, symbol, n, m, st.tr, vals, rescaled)


def all_fibers(model: WeierstrassModel, strict: bool = True) -> list[KodairaFiber]:
    """Singular fibers at every place, sorted with infinity last.

    Raises when the Euler numbers (weighted by place degree) do not total 24
    and ``strict`` is set.
    """
    out = []
    for place in model.finite_places() + [INFINITY]:
        f = tate(model, place)
        if f.symbol != "I0":
            out.append(f)
    out.sort(key=lambda f: f.place.sort_key())
    if strict and euler_sum(out) != 24:
        raise ModelError(f"Euler number sum is {euler_sum(out)}, not 24")
    return out


def euler_sum(fibers) -> int:
    return sum(f.place.degree * f.euler for f in fibers)
