"""Primitive embeddings of M = D5 + A1 into Niemeier lattices and their frames.

For each host the canonical D5 and A1 vectors are placed on root components,
the frame W = M-perp in the realized Niemeier lattice is computed exactly, and
the Mordell-Weil rank and torsion are read off the root sublattice of W.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

from . import exact as ex
from .lattice import (Lattice, LatticeError, RootSystemDecomposition, classify_root_vectors,
                      type_sort_key)
from .niemeier import HOST_IDS, NiemeierLattice, get, realize
from .rootsys import make_root_lattice

D5_ROLE, A1_ROLE, JOINT_ROLE = "D5", "A1", "A1+D5"


def canonical_vectors(family: str, n: int, role: str) -> list[list[int]]:
    """Canonical images of the simple roots of D5, A1 or D5+A1 (1-based node numbers).

    The D5 block comes first in the order (branch leaf, branch leaf, branch
    node, chain, chain end), followed by the A1 vector for a joint placement.
    """
    def node(i: int) -> list[int]:
        v = [0] * n
        v[i - 1] = 1
        return v

    if role == A1_ROLE:
        return [node({"A": n, "D": n, "E": 1}[family])]
    if family == "D":
        d5 = [node(n - 1), node(n), node(n - 2), node(n - 3), node(n - 4)]
        extra = [node(n - 6)] if role == JOINT_ROLE else []
    else:
        d5 = [node(2), node(5), node(4), node(3), node(1)]
        extra = [node(7)] if role == JOINT_ROLE else []
    return d5 + extra


def eligible(family: str, n: int, role: str) -> bool:
    if role == A1_ROLE:
        return True
    if role == D5_ROLE:
        return (family == "D" and n >= 5) or family == "E"
    return (family == "D" and n >= 7) or (family == "E" and n >= 7)


@dataclass(frozen=True)
class EmbeddingSpec:
    host: str
    placement: tuple[tuple[int, str], ...]   # (component index, role)

    def __post_init__(self):
        comps = [k for k, _ in self.placement]
        if len(set(comps)) != len(comps):
            raise LatticeError("split placement needs two different components")

    @property
    def niemeier(self) -> NiemeierLattice:
        return get(self.host)

    @property
    def is_joint(self) -> bool:
        return len(self.placement) == 1

    def description(self) -> str:
        labels = self.niemeier.component_labels
        roles = dict((r, k) for k, r in self.placement)
        if self.is_joint:
            return f"A1⊕D5⊂{labels[self.placement[0][0]]}"
        return f"A1⊂{labels[roles[A1_ROLE]]}, D5⊂{labels[roles[D5_ROLE]]}"

    def class_key(self) -> tuple:
        """Multiset of (component type, role) over all host components."""
        roles = dict(self.placement)
        labels = self.niemeier.component_labels
        return tuple(sorted((labels[k], roles.get(k, "")) for k in range(len(labels))))

    def m_vectors(self) -> list[list[int]]:
        """Images of the D5 simple roots then the A1 root, in L_root coordinates."""
        n = self.niemeier
        offs = n.offsets
        d5, a1 = [], []
        for k, role in self.placement:
            fam, size = n.components[k]
            vecs = canonical_vectors(fam, size, role)
            full = []
            for v in vecs:
                w = [0] * n.root_rank
                w[offs[k]:offs[k] + size] = v
                full.append(w)
            if role == A1_ROLE:
                a1 = full
            elif role == D5_ROLE:
                d5 = full
            else:
                d5, a1 = full[:5], full[5:]
        return d5 + a1


def m_gram() -> list[list[int]]:
    """Gram matrix of D5 + A1 in the canonical node order."""
    rl = make_root_lattice("D", 7)
    vecs = canonical_vectors("D", 7, JOINT_ROLE)
    return ex.gram_of(vecs, rl.gram)


def candidate_embeddings(host: str | NiemeierLattice) -> list[EmbeddingSpec]:
    """All joint and split placements on eligible components, one per class."""
    n = host if isinstance(host, NiemeierLattice) else get(host)
    if n.glue is None:
        return []
    raw = []
    comps = n.components
    for k, (fam, size) in enumerate(comps):
        if eligible(fam, size, JOINT_ROLE):
            raw.append(EmbeddingSpec(n.id, ((k, JOINT_ROLE),)))
    for kd, (fd, sd) in enumerate(comps):
        if not eligible(fd, sd, D5_ROLE):
            continue
        for ka, (fa, sa) in enumerate(comps):
            if ka != kd:
                raw.append(EmbeddingSpec(n.id, tuple(sorted(((kd, D5_ROLE), (ka, A1_ROLE))))))
    seen: dict[tuple, EmbeddingSpec] = {}
    for spec in raw:
        seen.setdefault(spec.class_key(), spec)
    return sorted(seen.values(), key=_spec_order)


def placement_classes(host: str) -> dict[tuple, list[EmbeddingSpec]]:
    """Every raw placement grouped by class key (for consistency checks)."""
    n = get(host)
    out: dict[tuple, list[EmbeddingSpec]] = {}
    comps = n.components
    for k, (fam, size) in enumerate(comps):
        if eligible(fam, size, JOINT_ROLE):
            s = EmbeddingSpec(n.id, ((k, JOINT_ROLE),))
            out.setdefault(s.class_key(), []).append(s)
    for kd, (fd, sd) in enumerate(comps):
        if eligible(fd, sd, D5_ROLE):
            for ka in range(len(comps)):
                if ka != kd:
                    s = EmbeddingSpec(n.id, tuple(sorted(((kd, D5_ROLE), (ka, A1_ROLE)))))
                    out.setdefault(s.class_key(), []).append(s)
    return out


def _spec_order(spec: EmbeddingSpec):
    return (not spec.is_joint, spec.placement)


# -- frames -----------------------------------------------------------------------

@dataclass(frozen=True)
class Frame:
    spec: EmbeddingSpec
    W: Lattice                      # basis in realized-L coordinates
    N: Lattice                      # basis in L_root coordinates
    W_root: RootSystemDecomposition  # roots in L_root coordinates
    W_bar_root: Lattice             # basis in realized-L coordinates
    torsion: tuple[int, ...]
    WN_invariants: tuple[int, ...]
    m_primitive: bool

    @property
    def mw_rank(self) -> int:
        return self.W.rank - self.W_root.rank

    @property
    def fiber_types(self) -> tuple[str, ...]:
        return self.W_root.labels


@lru_cache(maxsize=None)
def _host_data(host: str):
    r = realize(host)
    if not r.ok:
        raise LatticeError(f"{host} does not realize to a Niemeier lattice")
    basis = [list(row) for row in r.lattice.ambient]
    return r, basis, ex.inverse(basis)


def frame(spec: EmbeddingSpec) -> Frame:
    r, B, Binv = _host_data(spec.host)
    n = spec.niemeier
    groot = [list(row) for row in r.root_lattice.gram]
    M = spec.m_vectors()
    if ex.gram_of(M, groot) != m_gram():
        raise LatticeError("embedded vectors do not span D5+A1")
    m_L = ex.matmul(M, Binv)
    primitive = ex.is_integral(m_L) and all(
        f == 1 for f in ex.invariant_factors([ex.as_int_vector(v) for v in m_L]))

    # W = L ∩ M-perp, in L coordinates: rows (M G_root) B^T
    pair_rows = ex.matmul(ex.matmul(M, groot), ex.transpose(B))
    W_basis = ex.saturate(ex.rational_kernel(pair_rows, 24), 24)
    W = Lattice.from_basis(W_basis, r.lattice.gram, f"W({spec.description()})")

    # N = L_root ∩ M-perp, in root coordinates
    N_basis = ex.saturate(ex.rational_kernel(ex.matmul(M, groot), 24), 24)
    N = Lattice.from_basis(N_basis, groot, "N")

    # roots of L are roots of L_root (validated), so filter component roots
    roots = []
    Mg = ex.matmul(M, groot)
    for (fam, size), off in zip(n.components, n.offsets):
        for rt in make_root_lattice(fam, size).roots:
            v = [0] * 24
            v[off:off + size] = rt
            if all(ex.dot(row[off:off + size], rt) == 0 for row in Mg):
                roots.append(v)
    W_root = classify_root_vectors(roots, groot)

    simple_L = [ex.as_int_vector(v) for v in ex.matmul(W_root.simple_roots, Binv)] if roots else []
    torsion = tuple(f for f in ex.invariant_factors(simple_L) if f > 1) if simple_L else ()
    bar = ex.saturate(simple_L, 24) if simple_L else []
    W_bar = Lattice.from_basis(bar, r.lattice.gram, "W_bar_root") if bar else Lattice((), "W_bar_root")

    N_L = [ex.as_int_vector(v) for v in ex.matmul(N_basis, Binv)]
    wn = tuple(f for f in ex.invariant_factors(N_L) if f > 1)
    return Frame(spec, W, N, W_root, W_bar, torsion, wn, primitive)


def mw_rank(f: Frame) -> int:
    return f.mw_rank


def mw_torsion(f: Frame) -> tuple[int, ...]:
    return f.torsion


# -- fibration records ------------------------------------------------------------

@dataclass(frozen=True)
class FibrationRecord:
    host: str
    embedding: str
    fibers: tuple[str, ...]
    mw_rank: int
    torsion: tuple[int, ...]

    @property
    def torsion_order(self) -> int:
        o = 1
        for t in self.torsion:
            o *= t
        return o

    def fiber_multiset(self) -> tuple[str, ...]:
        return canonical_fibers(self.fibers)

    def to_dict(self) -> dict:
        return {"host": self.host, "embedding": self.embedding, "fibers": list(self.fibers),
                "rank": self.mw_rank, "torsion": list(self.torsion)}


def canonical_fibers(labels) -> tuple[str, ...]:
    """Sorted Dynkin labels with D3 read as A3 and D2 as A1 A1."""
    out = []
    for lab in labels:
        fam, n = lab[0], int(lab[1:])
        if fam == "D" and n == 3:
            out.append("A3")
        elif fam == "D" and n == 2:
            out += ["A1", "A1"]
        elif fam == "D" and n == 1:
            continue
        else:
            out.append(lab)
    return tuple(sorted(out, key=lambda s: type_sort_key((s[0], int(s[1:])))))


def parse_fibers(text: str) -> tuple[str, ...]:
    return canonical_fibers(re.findall(r"[ADE]\d+", text))


def record_of(f: Frame) -> FibrationRecord:
    return FibrationRecord(f.spec.host, f.spec.description(), canonical_fibers(f.fiber_types),
                           f.mw_rank, f.torsion)


def host_records(host: str) -> list[FibrationRecord]:
    return [record_of(frame(s)) for s in candidate_embeddings(host)]


def enumerate_all(jobs: int = 1) -> list[FibrationRecord]:
    """The fibration records of every host, in host order."""
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(host_records, HOST_IDS))
    else:
        chunks = [host_records(h) for h in HOST_IDS]
    records = [r for c in chunks for r in c]
    # within a host, follow the reference placement order so tables line up
    ref = {(h, e): i for i, (h, e, *_rest) in enumerate(TABLE1)}
    records.sort(key=lambda r: (HOST_IDS.index(r.host), ref.get((r.host, r.embedding), len(ref))))
    if len(records) != 30:
        raise LatticeError(f"expected 30 fibration records, found {len(records)}")
    return records


# -- reference table -----------------------------------------------------------------
# host, placement, reducible fibers, rank, torsion invariants

TABLE1 = (
    ("E8^3", "A1⊂E8, D5⊂E8", "E7A3E8", 0, ()),
    ("E8^3", "A1⊕D5⊂E8", "A1E8E8", 1, ()),
    ("E8D16", "A1⊂E8, D5⊂D16", "E7D11", 0, ()),
    ("E8D16", "A1⊕D5⊂E8", "A1D16", 1, (2,)),
    ("E8D16", "A1⊂D16, D5⊂E8", "A3A1D14", 0, (2,)),
    ("E8D16", "A1⊕D5⊂D16", "E8A1D9", 0, ()),
    ("E7^2D10", "A1⊂E7, D5⊂D10", "E7D6D5", 0, (2,)),
    ("E7^2D10", "A1⊂E7, D5⊂E7", "D6A1D10", 1, (2,)),
    ("E7^2D10", "A1⊕D5⊂E7", "E7D10", 1, (2,)),
    ("E7^2D10", "A1⊕D5⊂D10", "E7E7A1A3", 0, (2,)),
    ("E7^2D10", "A1⊂D10, D5⊂E7", "A1A1D8E7", 1, (2,)),
    ("E7A17", "A1⊕D5⊂E7", "A17", 1, (3,)),
    ("E7A17", "A1⊂A17, D5⊂E7", "A1A15", 2, ()),
    ("D24", "A1⊕D5⊂D24", "A1D17", 0, ()),
    ("D12^2", "A1⊂D12, D5⊂D12", "A1D10D7", 0, (2,)),
    ("D12^2", "A1⊕D5⊂D12", "A1D5D12", 0, (2,)),
    ("D8^3", "A1⊂D8, D5⊂D8", "A1D6A3D8", 0, (2, 2)),
    ("D8^3", "A1⊕D5⊂D8", "A1D8D8", 1, (2,)),
    ("D9A15", "A1⊕D5⊂D9", "A1A1A1A15", 0, (4,)),
    ("D9A15", "A1⊂A15, D5⊂D9", "D4A13", 1, ()),
    ("E6^4", "A1⊂E6, D5⊂E6", "A5E6E6", 1, (3,)),
    ("A11E6D7", "A1⊂E6, D5⊂D7", "A5A1A1A11", 0, (6,)),
    ("A11E6D7", "A1⊂A11, D5⊂D7", "A9A1A1E6", 1, ()),
    ("A11E6D7", "A1⊕D5⊂D7", "A11E6A1", 0, (3,)),
    ("A11E6D7", "A1⊂A11, D5⊂E6", "A9D7", 2, ()),
    ("A11E6D7", "A1⊂D7, D5⊂E6", "A11A1D5", 1, (4,)),
    ("D6^4", "A1⊂D6, D5⊂D6", "A1D4D6D6", 1, (2, 2)),
    ("D6A9^2", "A1⊂A9, D5⊂D6", "A7A9", 2, ()),
    ("D5^2A7^2", "A1⊂D5, D5⊂D5", "A1A3A7A7", 0, (8,)),
    ("D5^2A7^2", "A1⊂A7, D5⊂D5", "D5A5A7", 1, ()),
)


def table1_records() -> list[FibrationRecord]:
    return [FibrationRecord(h, e, parse_fibers(f), r, t) for h, e, f, r, t in TABLE1]


def compare_with_table1(records: list[FibrationRecord]) -> dict:
    """Match computed records against the reference table row by row."""
    ref = table1_records()
    key = lambda r: (r.host, r.embedding)
    want = {key(r): r for r in ref}
    got = {key(r): r for r in records}
    missing = sorted(set(want) - set(got))
    extra = sorted(set(got) - set(want))
    mismatched = [k for k in sorted(set(want) & set(got)) if want[k] != got[k]]
    ranks = Counter(r.mw_rank for r in records)
    return {"missing": missing, "extra": extra, "mismatched": mismatched,
            "rank_histogram": [ranks.get(i, 0) for i in range(3)],
            "ok": not missing and not extra and not mismatched and len(records) == 30}


def frame_dump(f: Frame) -> dict:
    def mat(m):
        return [[str(x) for x in row] for row in m]

    return {
        "host": f.spec.host,
        "embedding": f.spec.description(),
        "m_primitive": f.m_primitive,
        "W": {"rank": f.W.rank, "det": f.W.det, "gram": mat(f.W.gram)},
        "N": {"rank": f.N.rank, "det": f.N.det, "gram": mat(f.N.gram)},
        "W_root": list(f.W_root.labels),
        "W_bar_root": {"rank": f.W_bar_root.rank, "det": f.W_bar_root.det},
        "W_mod_N": list(f.WN_invariants),
        "mw_rank": f.mw_rank,
        "torsion": list(f.torsion),
    }


def wn_order_from_dets(f: Frame) -> int:
    """|W/N| from determinants: det N = det W * |W/N|^2."""
    q = abs(f.N.det) // abs(f.W.det)
    s = isqrt(q)
    if s * s != q or abs(f.N.det) % abs(f.W.det):
        raise LatticeError("det N / det W is not a square")
    return s
