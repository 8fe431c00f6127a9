"""Integral lattices, discriminant forms, root enumeration and Dynkin types.

Lattices are given by a symmetric integer Gram matrix.  A lattice may carry
``ambient`` coordinates: one rational row per basis vector, expressing it in
the basis of a host lattice whose Gram matrix is ``ambient_gram``.
Root lattices are negative definite, so roots are vectors of norm -2.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import isqrt, floor, ceil
from operator import add
from typing import Iterable, Sequence

from . import exact as ex


class LatticeError(ValueError):
    pass


def _frac_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def mod_q(x, m: int) -> Fraction:
    """Representative of x in [0, m)."""
    x = Fraction(x)
    return x - m * floor(x / m)


@dataclass(frozen=True)
class Lattice:
    gram: tuple[tuple[int, ...], ...]
    label: str = ""
    ambient: tuple[tuple[Fraction, ...], ...] | None = None
    ambient_gram: tuple[tuple[int, ...], ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        g = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        if any(len(row) != n for row in g):
            raise LatticeError("Gram matrix must be square")
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
            raise LatticeError("Gram matrix must be symmetric")
        if self.ambient is not None:
            amb = tuple(tuple(Fraction(x) for x in row) for row in self.ambient)
            object.__setattr__(self, "ambient", amb)
            if len(amb) != n:
                raise LatticeError("ambient rows must match rank")
            if self.ambient_gram is not None:
                ag = tuple(tuple(int(x) for x in row) for row in self.ambient_gram)
                object.__setattr__(self, "ambient_gram", ag)
                if n and ex.gram_of(amb, ag) != [list(r) for r in g]:
                    raise LatticeError("Gram does not match the induced ambient pairing")

    # -- construction ---------------------------------------------------------
    @classmethod
    def from_basis(cls, basis: Sequence[Sequence], host_gram: Sequence[Sequence], label: str = "") -> "Lattice":
        """Sublattice spanned by ``basis`` (rows in host coordinates)."""
        g = ex.gram_of(basis, host_gram)
        if not ex.is_integral(g):
            raise LatticeError("induced pairing is not integral")
        return cls(tuple(tuple(int(Fraction(x)) for x in row) for row in g), label,
                   tuple(tuple(Fraction(x) for x in row) for row in basis),
                   tuple(tuple(int(x) for x in row) for row in host_gram))

    # -- basic invariants -----------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def det(self) -> int:
        return int(ex.determinant([list(r) for r in self.gram]))

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    @cached_property
    def is_negative_definite(self) -> bool:
        # leading principal minors of -G all positive
        neg = [[-x for x in row] for row in self.gram]
        return all(ex.determinant([r[:k] for r in neg[:k]]) > 0 for k in range(1, self.rank + 1))

    def norm(self, v: Sequence) -> Fraction:
        return Fraction(ex.bilinear(v, self.gram, v))

    def pair(self, u: Sequence, v: Sequence) -> Fraction:
        return Fraction(ex.bilinear(u, self.gram, v))

    def in_ambient(self, v: Sequence) -> list[Fraction]:
        """Host coordinates of a vector given in this lattice's basis."""
        if self.ambient is None:
            raise LatticeError("lattice has no ambient coordinates")
        return ex.vecmat(v, self.ambient)

    # -- discriminant form ----------------------------------------------------
    @cached_property
    def discriminant_group(self) -> "DiscriminantGroup":
        return discriminant_group(self)

    # -- roots ------------------------------------------------------------------
    @cached_property
    def roots(self) -> tuple[tuple[int, ...], ...]:
        return tuple(sorted(tuple(v) for v in vectors_of_norm(self, 2)))

    def root_decomposition(self) -> "RootSystemDecomposition":
        return classify_roots(self)

    # -- serialization --------------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "gram": [list(r) for r in self.gram],
            "ambient": None if self.ambient is None else [[_frac_str(x) for x in r] for r in self.ambient],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "Lattice":
        amb = d.get("ambient")
        return cls(tuple(tuple(int(x) for x in r) for r in d["gram"]), d.get("label", ""),
                   None if amb is None else tuple(tuple(Fraction(x) for x in r) for r in amb))

    @classmethod
    def from_json(cls, text: str) -> "Lattice":
        return cls.from_dict(json.loads(text))


def orthogonal_sum(parts: Sequence[Lattice], label: str = "") -> Lattice:
    n = sum(p.rank for p in parts)
    g = ex.zeros(n, n)
    off = 0
    for p in parts:
        for i in range(p.rank):
            for j in range(p.rank):
                g[off + i][off + j] = p.gram[i][j]
        off += p.rank
    return Lattice(tuple(map(tuple, g)), label or "+".join(p.label for p in parts))


# -- discriminant groups ------------------------------------------------------

@dataclass(frozen=True)
class DiscriminantGroup:
    invariant_factors: tuple[int, ...]
    generators: tuple[tuple[Fraction, ...], ...]
    gram: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def order(self) -> int:
        o = 1
        for d in self.invariant_factors:
            o *= d
        return o

    def q(self, v: Sequence) -> Fraction:
        return mod_q(ex.bilinear(v, self.gram, v), 2)

    def b(self, u: Sequence, v: Sequence) -> Fraction:
        return mod_q(ex.bilinear(u, self.gram, v), 1)

    @property
    def q_values(self) -> tuple[Fraction, ...]:
        return tuple(self.q(g) for g in self.generators)

    @property
    def b_table(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(self.b(g, h) for h in self.generators) for g in self.generators)

    def contains_dual(self, v: Sequence) -> bool:
        """True when v (rational, L-coordinates) lies in the dual lattice."""
        return ex.is_integral(ex.matvec(self.gram, v))


def discriminant_group(lat: Lattice) -> DiscriminantGroup:
    """L*/L via the Smith form of the Gram matrix.

    With u G v = d, the dual is G^{-1} Z^n = v d^{-1} Z^n, so the columns of
    v divided by the invariant factors generate L*/L.
    """
    if lat.rank and lat.det == 0:
        raise LatticeError("degenerate lattice has infinite discriminant group")
    if lat.rank == 0:
        return DiscriminantGroup((), (), lat.gram)
    d, _, v = ex.smith_normal_form([list(r) for r in lat.gram])
    facs, gens = [], []
    for i in range(lat.rank):
        di = d[i][i]
        if di > 1:
            facs.append(di)
            gens.append(tuple(Fraction(v[k][i], di) for k in range(lat.rank)))
    return DiscriminantGroup(tuple(facs), tuple(gens), lat.gram)


# -- short vectors ------------------------------------------------------------

def _fp_decomposition(p: Sequence[Sequence]) -> list[list[Fraction]]:
    """Exact completion of squares: Q(x) = sum q_ii (x_i + sum_{j>i} q_ij x_j)^2."""
    n = len(p)
    q = ex.to_fraction_matrix(p)
    for i in range(n):
        if q[i][i] <= 0:
            raise LatticeError("form is not definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def short_vectors(form: Sequence[Sequence], bound) -> list[list[int]]:
    """All nonzero integer x with 0 < x^T P x <= bound for positive definite P."""
    n = len(form)
    if n == 0:
        return []
    q = _fp_decomposition(form)
    bound = Fraction(bound)
    out: list[list[int]] = []
    x = [0] * n

    def rec(i: int, remaining: Fraction):
        c = sum((q[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        s2 = remaining / q[i][i]
        r = isqrt(ceil(s2)) + 1
        lo, hi = floor(-c) - r, ceil(-c) + r
        for xi in range(lo, hi + 1):
            t = (xi + c) ** 2
            if t > s2:
                continue
            x[i] = xi
            rem = remaining - q[i][i] * t
            if i == 0:
                if any(x):
                    out.append(list(x))
            else:
                rec(i - 1, rem)
        x[i] = 0

    rec(n - 1, bound)
    return out


def vectors_of_norm(lat: Lattice, m: int) -> list[list[int]]:
    """Vectors v with b(v, v) = -m in a negative definite lattice."""
    if lat.rank and not lat.is_negative_definite:
        raise LatticeError("root enumeration needs a negative definite lattice")
    pos = [[-x for x in row] for row in lat.gram]
    return [v for v in short_vectors(pos, m) if ex.bilinear(v, pos, v) == m]


# -- Dynkin classification --------------------------------------------------

ROOT_COUNTS = {"A": lambda n: n * (n + 1), "D": lambda n: 2 * n * (n - 1)}
E_COUNTS = {6: 72, 7: 126, 8: 240}


def dynkin_type(rank: int, nroots: int) -> tuple[str, int]:
    """Irreducible ADE type from rank and number of roots (A3 preferred over D3)."""
    if nroots == rank * (rank + 1):
        return ("A", rank)
    if rank >= 4 and nroots == 2 * rank * (rank - 1):
        return ("D", rank)
    if E_COUNTS.get(rank) == nroots:
        return ("E", rank)
    raise LatticeError(f"no irreducible root system of rank {rank} with {nroots} roots")


def type_label(t: tuple[str, int]) -> str:
    return f"{t[0]}{t[1]}"


_FAMILY_ORDER = {"A": 0, "D": 1, "E": 2}


def type_sort_key(t: tuple[str, int]):
    return (_FAMILY_ORDER[t[0]], t[1])


@dataclass(frozen=True)
class RootComponent:
    type: tuple[str, int]
    simple_roots: tuple[tuple, ...]
    roots: tuple[tuple, ...] = field(repr=False)

    @property
    def label(self) -> str:
        return type_label(self.type)

    @property
    def rank(self) -> int:
        return self.type[1]


@dataclass(frozen=True)
class RootSystemDecomposition:
    components: tuple[RootComponent, ...]

    @property
    def types(self) -> tuple[tuple[str, int], ...]:
        return tuple(c.type for c in self.components)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(c.label for c in self.components)

    @property
    def rank(self) -> int:
        return sum(c.rank for c in self.components)

    @property
    def simple_roots(self) -> list[tuple]:
        return [r for c in self.components for r in c.simple_roots]


def root_det(t: tuple[str, int]) -> int:
    """|det| of an irreducible root lattice."""
    fam, n = t
    if fam == "A":
        return n + 1
    if fam == "D":
        return 4
    return {6: 3, 7: 2, 8: 1}[n]


def _generic_weights(vectors: Sequence[Sequence]) -> list[int]:
    """Integer weights making w.v injective on the given integer vectors."""
    m = max((abs(int(x)) for v in vectors for x in v), default=0)
    base = 2 * m + 1
    return [base ** i for i in range(len(vectors[0]))] if vectors else []


def classify_root_vectors(roots: Iterable[Sequence], gram: Sequence[Sequence]) -> RootSystemDecomposition:
    """Split a closed root set into irreducible components with simple roots.

    ``roots`` are integer coordinate vectors in a lattice with Gram ``gram``;
    the set must be closed under negation.
    """
    rs = sorted({tuple(int(x) for x in r) for r in roots})
    if not rs:
        return RootSystemDecomposition(())
    weights = _generic_weights(rs)
    pos = [r for r in rs if ex.dot(weights, r) > 0]
    sums = {tuple(map(add, p, q)) for i, p in enumerate(pos) for q in pos[i + 1:]}
    simple = [r for r in pos if r not in sums]
    if 2 * len(pos) != len(rs):
        raise LatticeError("root set is not closed under negation")
    sg = [ex.vecmat(s, gram) for s in simple]
    # components of the Dynkin graph on the simple roots
    parent = list(range(len(simple)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(len(simple)):
        for j in range(i + 1, len(simple)):
            if ex.dot(sg[i], simple[j]) != 0:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = {}
    for i in range(len(simple)):
        groups.setdefault(find(i), []).append(i)
    members: dict[int, list[tuple]] = {k: [] for k in groups}
    for r in rs:
        hit = {find(i) for i in range(len(simple)) if ex.dot(sg[i], r) != 0}
        if len(hit) != 1:
            raise LatticeError("root pairs with several components")
        members[hit.pop()].append(r)
    comps = []
    for k, idx in groups.items():
        sim = sorted((simple[i] for i in idx), key=lambda r: ex.dot(weights, r))
        t = dynkin_type(len(sim), len(members[k]))
        comps.append(RootComponent(t, tuple(_order_simple(sim, gram, t)), tuple(members[k])))
    comps.sort(key=lambda c: (type_sort_key(c.type), c.simple_roots))
    return RootSystemDecomposition(tuple(comps))


def _order_simple(simple: list[tuple], gram, t) -> list[tuple]:
    """Order simple roots along the Dynkin diagram (chain from an end node)."""
    n = len(simple)
    if n <= 1:
        return list(simple)
    adj = {i: [j for j in range(n) if j != i and ex.bilinear(simple[i], gram, simple[j]) != 0] for i in range(n)}
    ends = [i for i in range(n) if len(adj[i]) == 1]
    # start from an end of the longest arm so A/D/E chains come out in a stable order
    best = None
    for s in ends:
        order, prev, cur = [s], None, s
        while True:
            nxt = [j for j in adj[cur] if j != prev and j not in order]
            if len(nxt) != 1:
                break
            prev, cur = cur, nxt[0]
            order.append(cur)
        if best is None or len(order) > len(best):
            best = order
    rest = [i for i in range(n) if i not in best]
    return [simple[i] for i in best + rest]


def classify_roots(lat: Lattice) -> RootSystemDecomposition:
    return classify_root_vectors(lat.roots, lat.gram)


# -- sublattice operations ------------------------------------------------------

def orthogonal_complement(sub: Lattice, host: Lattice, label: str = "") -> Lattice:
    """{x in host : b(x, s) = 0 for all s in sub} with coordinates in host."""
    if sub.ambient is None:
        raise LatticeError("sublattice needs ambient coordinates")
    rows = ex.matmul([list(r) for r in sub.ambient], [list(r) for r in host.gram])
    if sub.rank == 0:
        kernel = [[Fraction(int(i == j)) for j in range(host.rank)] for i in range(host.rank)]
    else:
        kernel = ex.rational_kernel(rows, host.rank)
    basis = ex.saturate(kernel, host.rank) if kernel else []
    return Lattice.from_basis(basis, host.gram, label) if basis else Lattice((), label, (), host.gram)


def is_primitive(sub: Lattice) -> bool:
    """True when the sublattice has integral host coordinates and a free quotient."""
    if sub.ambient is None:
        raise LatticeError("sublattice needs ambient coordinates")
    if not ex.is_integral([list(r) for r in sub.ambient]):
        return False
    if sub.rank == 0:
        return True
    ints = [ex.as_int_vector(r) for r in sub.ambient]
    facs = ex.invariant_factors(ints)
    return len(facs) == sub.rank and all(f == 1 for f in facs)


def overlattice_from_glue(lat: Lattice, glue: Sequence[Sequence], label: str = "") -> Lattice:
    """Lattice generated by L and the glue vectors (rational L-coordinates).

    The result has ambient coordinates in L (rational) and an integer Gram.
    """
    glue = [[Fraction(x) for x in g] for g in glue]
    for k, g in enumerate(glue):
        if not ex.is_integral(ex.matvec(lat.gram, g)):
            raise LatticeError(f"glue vector {k} is not in the dual lattice")
        qn = Fraction(ex.bilinear(g, lat.gram, g))
        if qn.denominator != 1 or qn.numerator % 2:
            raise LatticeError(f"glue vector {k} has norm {qn}, not an even integer")
        for j in range(k):
            if Fraction(ex.bilinear(g, lat.gram, glue[j])).denominator != 1:
                raise LatticeError(f"glue vectors {j} and {k} have non-integral pairing")
    n = lat.rank
    unit = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    basis = ex.lattice_basis(unit + glue)
    g = ex.gram_of(basis, lat.gram)
    if not ex.is_integral(g):
        raise LatticeError("glued lattice is not integral")
    out = Lattice(tuple(tuple(int(x) for x in r) for r in g), label or lat.label,
                  tuple(tuple(r) for r in basis), lat.gram)
    if lat.is_even and not out.is_even:
        raise LatticeError("glued lattice is not even")
    return out
