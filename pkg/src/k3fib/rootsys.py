"""Root lattices A_n, D_n, E_6, E_7, E_8 in Bourbaki coordinates.

Each root lattice is returned with its Gram matrix (the negated Cartan
matrix), the Euclidean coordinates of its simple roots, the full root list in
simple-root coordinates and the named glue vectors as rational combinations
of simple roots.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

from . import exact as ex
from .lattice import Lattice, LatticeError

F = Fraction
HALF = F(1, 2)


@dataclass(frozen=True)
class RootLattice:
    family: str
    n: int
    lattice: Lattice
    coords: tuple[tuple[Fraction, ...], ...]
    roots: tuple[tuple[int, ...], ...]
    glue: dict

    @property
    def label(self) -> str:
        return f"{self.family}{self.n}"

    @property
    def gram(self):
        return self.lattice.gram


def _unit(n: int, i: int, c=1) -> list[Fraction]:
    v = [F(0)] * n
    v[i] = F(c)
    return v


def _add(*vs):
    return [sum(xs, F(0)) for xs in zip(*vs)]


def _simple_coords(family: str, n: int) -> list[list[Fraction]]:
    if family == "A":
        return [_add(_unit(n + 1, i), _unit(n + 1, i + 1, -1)) for i in range(n)]
    if family == "D":
        basis = [_add(_unit(n, i), _unit(n, i + 1, -1)) for i in range(n - 1)]
        basis.append(_add(_unit(n, n - 2), _unit(n, n - 1)))
        return basis
    # E_n: first n of the eight E8 simple roots
    e = [[HALF, -HALF, -HALF, -HALF, -HALF, -HALF, -HALF, HALF],
         _add(_unit(8, 0), _unit(8, 1))]
    for i in range(3, 9):
        e.append(_add(_unit(8, i - 2), _unit(8, i - 3, -1)))
    return e[:n]


def _euclidean_roots(family: str, n: int) -> list[list[Fraction]]:
    if family == "A":
        return [_add(_unit(n + 1, i), _unit(n + 1, j, -1)) for i in range(n + 1) for j in range(n + 1) if i != j]
    if family == "D":
        return [_add(_unit(n, i, s), _unit(n, j, t)) for i, j in combinations(range(n), 2) for s in (1, -1) for t in (1, -1)]
    roots = [_add(_unit(8, i, s), _unit(8, j, t)) for i, j in combinations(range(8), 2) for s in (1, -1) for t in (1, -1)]
    for signs in product((1, -1), repeat=8):
        if signs.count(-1) % 2 == 0:
            roots.append([F(s, 2) for s in signs])
    return roots


def _validate(family: str, n: int) -> None:
    ok = (family == "A" and n >= 1) or (family == "D" and n >= 2) or (family == "E" and n in (6, 7, 8))
    if not ok:
        raise LatticeError(f"no root lattice {family}{n}")


def _glue(family: str, n: int) -> dict[str, tuple[Fraction, ...]]:
    if family == "A":
        l = n
        return {"alpha": tuple(F(l - j + 1, l + 1) for j in range(1, l + 1))}
    if family == "D":
        l = n
        delta = [HALF * i for i in range(1, l - 1)] + [F(l - 2, 4), F(l, 4)]
        dbar = [F(1)] * (l - 2) + [HALF, HALF]
        out = {"delta": tuple(delta), "delta_bar": tuple(dbar)}
        if l % 2 == 0:
            out["delta_tilde"] = tuple([HALF * i for i in range(1, l - 1)] + [F(l, 4), F(l - 2, 4)])
        return out
    base = [2, 3, 4, 6, 5, 4, 3]
    if n == 6:
        return {"eta": tuple(F(-c, 3) for c in base[:6])}
    if n == 7:
        return {"eta": tuple(F(-c, 2) for c in base)}
    return {}


@lru_cache(maxsize=None)
def make_root_lattice(family: str, n: int) -> RootLattice:
    """Root lattice of type ``family``+``n`` with negative definite Gram."""
    _validate(family, n)
    simple = _simple_coords(family, n)
    gram = [[-ex.dot(a, b) for b in simple] for a in simple]
    pos_gram = [[-x for x in row] for row in gram]
    # integer arithmetic: c = pairings * adj / det with adj = det * G^{-1}
    det = int(ex.determinant([[int(x) for x in r] for r in pos_gram]))
    adj = [[int(x * det) for x in row] for row in ex.inverse(pos_gram)]
    # doubled coordinates are integral, so pairings are dot products over 4
    simple2 = [[int(2 * x) for x in s] for s in simple]
    roots = []
    for r in _euclidean_roots(family, n):
        r2 = [int(2 * x) for x in r]
        p = [sum(a * b for a, b in zip(r2, s2)) // 4 for s2 in simple2]
        num = [sum(p[i] * adj[i][j] for i in range(n)) for j in range(n)]
        if any(x % det for x in num):
            continue
        c = [x // det for x in num]
        # E6/E7 keep only the E8 roots inside their span
        if family == "E" and ex.vecmat(c, simple2) != r2:
            continue
        roots.append(tuple(c))
    lat = Lattice(tuple(tuple(int(x) for x in r) for r in gram), f"{family}{n}")
    return RootLattice(family, n, lat, tuple(tuple(s) for s in simple), tuple(sorted(roots)), _glue(family, n))


def euclidean(family: str, n: int, v) -> list[Fraction]:
    """Euclidean coordinates of a vector given in simple-root coordinates."""
    return ex.vecmat(list(v), [list(r) for r in _simple_coords(family, n)])


def coset_min_norm(family: str, n: int, v) -> Fraction:
    """Minimal |norm| of v + R for v in the dual of the root lattice R.

    Closed forms in Euclidean coordinates: an A_n class with all coordinates
    congruent to -k/(n+1) has minimum k(n+1-k)/(n+1); a D_n class is 0 or 1
    for integral cosets and n/4 for half-integral ones; the nonzero classes of
    E6 and E7 have minima 4/3 and 3/2.
    """
    x = euclidean(family, n, v)
    if all(Fraction(c).denominator == 1 for c in v):
        return Fraction(0)
    if family == "A":
        k = (-x[0] * (n + 1)) % (n + 1)
        k = int(k)
        return Fraction(k * (n + 1 - k), n + 1)
    if family == "D":
        if all(Fraction(c).denominator == 1 for c in x):
            return Fraction(0) if sum(x) % 2 == 0 else Fraction(1)
        return Fraction(n, 4)
    return {6: Fraction(4, 3), 7: Fraction(3, 2)}[n]


def parse_label(label: str) -> tuple[str, int]:
    label = label.strip()
    fam, num = label[0].upper(), label[1:]
    if fam not in "ADE" or not num.isdigit():
        raise LatticeError(f"bad root lattice label {label!r}")
    return fam, int(num)
