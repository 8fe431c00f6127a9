"""The 24 Niemeier lattices as root type plus glue code.

Glue generators are words in the named glue vectors of the components,
for example ``eta^(1) + delta`` on E7 E7 D10.  Thirteen lattices (the hosts of
D5+A1) carry explicit generators; the rest carry structure data only.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import floor

from . import exact as ex
from .lattice import (Lattice, LatticeError, classify_root_vectors, orthogonal_sum,
                      overlattice_from_glue)
from .rootsys import coset_min_norm, make_root_lattice

# (coefficient, glue name, component index)
Term = tuple[int, str, int]
Word = tuple[Term, ...]


@dataclass(frozen=True)
class NiemeierLattice:
    id: str
    components: tuple[tuple[str, int], ...]
    glue_factors: tuple[int, ...]
    glue: tuple[Word, ...] | None = None
    printed_glue: tuple[Word, ...] | None = field(default=None, compare=False)
    note: str = ""

    @property
    def component_labels(self) -> tuple[str, ...]:
        return tuple(f"{f}{n}" for f, n in self.components)

    @property
    def glue_order(self) -> int:
        o = 1
        for d in self.glue_factors:
            o *= d
        return o

    @property
    def root_rank(self) -> int:
        return sum(n for _, n in self.components)

    @property
    def has_glue(self) -> bool:
        return self.glue is not None

    @property
    def offsets(self) -> tuple[int, ...]:
        out, off = [], 0
        for _, n in self.components:
            out.append(off)
            off += n
        return tuple(out)

    def glue_vector(self, word: Word) -> list[Fraction]:
        """Rational coordinates of a glue word in the simple-root basis of L_root."""
        v = [Fraction(0)] * self.root_rank
        offs = self.offsets
        for coef, name, k in word:
            fam, n = self.components[k]
            g = make_root_lattice(fam, n).glue[name]
            for i, x in enumerate(g):
                v[offs[k] + i] += coef * x
        return v

    def glue_vectors(self) -> list[list[Fraction]]:
        if self.glue is None:
            raise LatticeError(f"glue data unavailable for {self.id}")
        return [self.glue_vector(w) for w in self.glue]


def _w(*terms) -> Word:
    out = []
    for t in terms:
        if len(t) == 2:
            out.append((1, t[0], t[1]))
        else:
            out.append(tuple(t))
    return tuple(out)


A, D, E = "alpha", "delta", "delta_bar"
DT, ETA = "delta_tilde", "eta"


def _d6_code() -> tuple[Word, ...]:
    # even permutations of (0, delta, delta_bar, delta_tilde) on four D6's
    names = [None, D, E, DT]
    perms = [p for p in permutations(range(4))
             if sum(p[i] > p[j] for i in range(4) for j in range(i + 1, 4)) % 2 == 0]
    return tuple(tuple((1, names[p[k]], k) for k in range(4) if names[p[k]]) for p in perms)


_TABLE = [
    # id, components, invariant factors, glue, printed glue (when it differs)
    ("E8^3", (("E", 8),) * 3, (), (), None),
    ("E8D16", (("E", 8), ("D", 16)), (2,), (_w((D, 1)),), None),
    ("E7^2D10", (("E", 7), ("E", 7), ("D", 10)), (2, 2),
     (_w((ETA, 0), (D, 2)), _w((ETA, 1), (DT, 2))),
     (_w((ETA, 0), (D, 2)), _w((ETA, 1), (E, 2)))),
    ("E7A17", (("E", 7), ("A", 17)), (6,), (_w((ETA, 0), (3, A, 1)),), None),
    ("D24", (("D", 24),), (2,), (_w((D, 0)),), None),
    ("D12^2", (("D", 12), ("D", 12)), (2, 2), (_w((D, 0), (E, 1)), _w((E, 0), (D, 1))), None),
    ("D8^3", (("D", 8),) * 3, (2, 2, 2),
     (_w((D, 0), (E, 1), (E, 2)), _w((E, 0), (D, 1), (E, 2)), _w((E, 0), (E, 1), (D, 2))), None),
    ("D9A15", (("D", 9), ("A", 15)), (8,), (_w((D, 0), (2, A, 1)),), None),
    ("E6^4", (("E", 6),) * 4, (3, 3),
     (_w((ETA, 0), (ETA, 1), (ETA, 2)), _w((2, ETA, 0), (ETA, 2), (ETA, 3))), None),
    ("A11E6D7", (("A", 11), ("E", 6), ("D", 7)), (12,), (_w((A, 0), (ETA, 1), (D, 2)),), None),
    ("D6^4", (("D", 6),) * 4, (2, 2, 2, 2), _d6_code(),
     (_w((E, 0), (E, 3)), _w((E, 1), (E, 2)), _w((D, 0), (E, 2), (D, 3)), _w((E, 0), (E, 1)))),
    ("D6A9^2", (("D", 6), ("A", 9), ("A", 9)), (2, 10),
     (_w((DT, 0), (5, A, 2)), _w((D, 0), (A, 1), (2, A, 2))),
     (_w((D, 0), (5, A, 2)), _w((D, 0), (A, 1), (2, A, 2)))),
    ("D5^2A7^2", (("D", 5), ("D", 5), ("A", 7), ("A", 7)), (4, 8),
     (_w((3, D, 0), (D, 1), (2, A, 2)), _w((D, 0), (2, D, 1), (A, 2), (A, 3))),
     (_w((D, 0), (D, 1), (2, A, 2)), _w((D, 0), (2, D, 1), (A, 2), (A, 3)))),
    ("A8^3", (("A", 8),) * 3, (3, 9), None, None),
    ("A24", (("A", 24),), (5,), None, None),
    ("A12^2", (("A", 12),) * 2, (13,), None, None),
    ("D4^6", (("D", 4),) * 6, (2,) * 6, None, None),
    ("D4A5^4", (("D", 4),) + (("A", 5),) * 4, (2, 6, 6), None, None),
    ("A6^4", (("A", 6),) * 4, (7, 7), None, None),
    ("A4^6", (("A", 4),) * 6, (5, 5, 5), None, None),
    ("A3^8", (("A", 3),) * 8, (4, 4, 4, 4), None, None),
    ("A2^12", (("A", 2),) * 12, (3,) * 6, None, None),
    ("A1^24", (("A", 1),) * 24, (2,) * 12, None, None),
    ("Leech", (), (), None, None),
]

# hosts admitting a primitive D5+A1, in table order
HOST_IDS = ("E8^3", "E8D16", "E7^2D10", "E7A17", "D24", "D12^2", "D8^3", "D9A15",
            "E6^4", "A11E6D7", "D6^4", "D6A9^2", "D5^2A7^2")


@lru_cache(maxsize=None)
def all_niemeier() -> tuple[NiemeierLattice, ...]:
    out = []
    for nid, comps, facs, glue, printed in _TABLE:
        out.append(NiemeierLattice(nid, comps, facs, glue, printed if printed is not None else glue))
    return tuple(out)


def get(nid: str) -> NiemeierLattice:
    for n in all_niemeier():
        if n.id == nid:
            return n
    raise KeyError(f"unknown Niemeier lattice {nid!r}")


def root_lattice_of(n: NiemeierLattice) -> Lattice:
    parts = [make_root_lattice(f, k).lattice for f, k in n.components]
    return orthogonal_sum(parts, n.id + " root") if parts else Lattice((), n.id + " root")


# -- glue group enumeration and root checks ------------------------------------

def _reduce_mod1(v) -> tuple[Fraction, ...]:
    return tuple(x - floor(x) for x in v)


def glue_group(n: NiemeierLattice, words=None) -> list[tuple[Fraction, ...]]:
    """All elements of the subgroup of L_root*/L_root generated by the glue words."""
    gens = [_reduce_mod1(n.glue_vector(w)) for w in (n.glue if words is None else words)]
    zero = tuple(Fraction(0) for _ in range(n.root_rank))
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                s = _reduce_mod1([a + b for a, b in zip(v, g)])
                if s not in seen:
                    seen.add(s)
                    nxt.append(s)
        frontier = nxt
    return sorted(seen)


def component_classes(n: NiemeierLattice, v) -> list[tuple[Fraction, ...]]:
    offs = n.offsets
    return [tuple(v[o:o + k]) for o, (_, k) in zip(offs, n.components)]


def coset_min(n: NiemeierLattice, v, cap: int = 2) -> Fraction | None:
    """Minimal |norm| of the coset v + L_root (None if above ``cap``)."""
    total = Fraction(0)
    for (fam, k), c in zip(n.components, component_classes(n, v)):
        total += coset_min_norm(fam, k, c)
        if total > cap:
            return None
    return total


@dataclass(frozen=True)
class Realization:
    niemeier: NiemeierLattice
    root_lattice: Lattice
    lattice: Lattice
    glue_elements: tuple[tuple[Fraction, ...], ...]
    extra_root_cosets: tuple[tuple[Fraction, ...], ...]

    @property
    def ok(self) -> bool:
        L = self.lattice
        return (L.rank == 24 and abs(L.det) == 1 and L.is_even
                and not self.extra_root_cosets and len(self.glue_elements) == self.niemeier.glue_order)


@lru_cache(maxsize=None)
def realize(nid: str, printed: bool = False) -> Realization:
    """Overlattice of L_root generated by the glue words.

    Extra roots can only live in nonzero glue cosets, so each nonzero glue
    element's coset minimum is computed componentwise; a coset of minimum 2
    means the glue adds roots beyond the declared root type.
    """
    n = get(nid)
    if n.glue is None:
        raise LatticeError(f"glue data unavailable for {nid}")
    words = n.printed_glue if printed else n.glue
    root = root_lattice_of(n)
    vecs = [n.glue_vector(w) for w in words]
    lat = overlattice_from_glue(root, vecs, n.id)
    elems = glue_group(n, words)
    extra = tuple(g for g in elems if any(g) and coset_min(n, g) == 2)
    return Realization(n, root, lat, tuple(elems), extra)


def recomputed_root_types(nid: str) -> tuple[str, ...]:
    """Dynkin labels of the root system of the realized lattice.

    Valid once ``realize`` found no extra-root cosets: then the roots are
    exactly those of the components.
    """
    n = get(nid)
    root = root_lattice_of(n)
    roots = []
    for (fam, k), off in zip(n.components, n.offsets):
        for r in make_root_lattice(fam, k).roots:
            v = [0] * n.root_rank
            v[off:off + k] = r
            roots.append(v)
    dec = classify_root_vectors(roots, root.gram)
    return dec.labels


def validate(nid: str) -> dict:
    r = realize(nid)
    n = r.niemeier
    labels = recomputed_root_types(nid)
    declared = tuple(sorted(n.component_labels, key=lambda s: ("ADE".index(s[0]), int(s[1:]))))
    rel = [ex.as_int_vector(row) for row in _glue_relations(r)]
    inv = sorted(x for x in ex.invariant_factors(rel) if x > 1)
    return {
        "id": nid,
        "rank": r.lattice.rank,
        "det": r.lattice.det,
        "even": r.lattice.is_even,
        "glue_order": len(r.glue_elements),
        "glue_invariants": inv,
        "declared_invariants": list(n.glue_factors),
        "extra_root_cosets": len(r.extra_root_cosets),
        "root_types": list(labels),
        "declared_root_types": list(declared),
        "ok": bool(r.ok and labels == declared and inv == sorted(n.glue_factors)
                   and len(r.glue_elements) ** 2 == abs(r.root_lattice.det)),
    }


def _glue_relations(r: Realization) -> list[list[int]]:
    """Coordinates of L_root's basis in the realized lattice's basis.

    The Smith invariants of this matrix give the structure of L/L_root.
    """
    basis = [list(row) for row in r.lattice.ambient]
    n = r.root_lattice.rank
    unit = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    return [list(c) for c in ex.coordinates_in(basis, unit)]
