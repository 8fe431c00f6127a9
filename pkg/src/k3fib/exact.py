"""Exact integer and rational linear algebra.

Matrices are plain lists of rows.  Integer matrices hold ``int`` entries,
rational ones hold :class:`fractions.Fraction`.  Nothing here uses floating
point.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Matrix = list[list]


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> list[list[int]]:
    return [[0] * c for _ in range(r)]


def transpose(m: Sequence[Sequence]) -> Matrix:
    if not m:
        return []
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def vecmat(v: Sequence, a: Sequence[Sequence]) -> list:
    if not a:
        return []
    return [sum(v[i] * a[i][j] for i in range(len(a))) for j in range(len(a[0]))]


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


def bilinear(u: Sequence, gram: Sequence[Sequence], v: Sequence):
    """u^T G v."""
    return dot(vecmat(u, gram), v)


def gram_of(basis: Sequence[Sequence], gram: Sequence[Sequence]) -> Matrix:
    """Gram matrix B G B^T of the rows of ``basis``."""
    if not basis:
        return []
    ints, d = scale_to_integer(basis)
    g, dg = scale_to_integer(gram)
    out = matmul(matmul(ints, g), transpose(ints))
    den = d * d * dg
    if den == 1:
        return out
    return [[Fraction(x, den) for x in row] for row in out]


def to_fraction_matrix(m: Sequence[Sequence]) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in m]


def is_integral(v) -> bool:
    if isinstance(v, (list, tuple)):
        return all(is_integral(x) for x in v)
    return Fraction(v).denominator == 1


def as_int_vector(v: Sequence) -> list[int]:
    out = []
    for x in v:
        f = Fraction(x)
        if f.denominator != 1:
            raise ValueError(f"non-integral entry {f}")
        out.append(f.numerator)
    return out


def common_denominator(rows: Sequence[Sequence]) -> int:
    d = 1
    for row in rows:
        for x in row:
            d = lcm(d, Fraction(x).denominator)
    return d


def scale_to_integer(rows: Sequence[Sequence]) -> tuple[list[list[int]], int]:
    """Multiply rows by a common denominator; return (integer rows, denominator)."""
    d = common_denominator(rows)
    return [[int(Fraction(x) * d) for x in row] for row in rows], d


# -- determinants, inverses, elimination over Q ---------------------------------

def determinant(m: Sequence[Sequence]):
    """Exact determinant (Bareiss fraction-free elimination for integer input)."""
    n = len(m)
    if n == 0:
        return 1
    if all(isinstance(x, int) for row in m for x in row):
        a = [list(row) for row in m]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]
    a = to_fraction_matrix(m)
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        inv = 1 / a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] * inv
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return det


def rref(m: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q and the pivot columns."""
    a = to_fraction_matrix(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m: Sequence[Sequence]) -> int:
    if not m:
        return 0
    return len(rref(m)[1])


def inverse(m: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(m)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red[:n]]


def rational_kernel(m: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Q-basis of the right kernel {v : m v = 0}."""
    if ncols is None:
        ncols = len(m[0]) if m else 0
    if not m:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    red, piv = rref(m)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(piv):
            v[p] = -red[i][f]
        basis.append(v)
    return basis


def solve_left(basis: Sequence[Sequence], v: Sequence) -> list[Fraction] | None:
    """Coefficients c with c . basis = v, or None when v is outside the row span."""
    k = len(basis)
    if k == 0:
        return [] if all(x == 0 for x in v) else None
    n = len(v)
    # columns of the system: unknowns c_1..c_k, equations per coordinate
    aug = [[Fraction(basis[i][j]) for i in range(k)] + [Fraction(v[j])] for j in range(n)]
    red, piv = rref(aug)
    if k in piv:
        return None
    c = [Fraction(0)] * k
    for i, p in enumerate(piv):
        c[p] = red[i][k]
    return c


# -- integer normal forms -------------------------------------------------------

def smith_normal_form(m: Sequence[Sequence[int]]):
    """Smith normal form ``(d, u, v)`` with ``u * m * v == d``.

    ``u`` and ``v`` are unimodular; the diagonal of ``d`` is non-negative and
    forms a divisibility chain.  Pivots are chosen as the smallest nonzero
    entry in absolute value, which keeps entries small for the matrix sizes
    used here.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [[int(x) for x in row] for row in m]
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):  # row_dst += f * row_src
        if f:
            a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
            u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, f):
        if f:
            for row in a:
                row[dst] += f * row[src]
            for row in v:
                row[dst] += f * row[src]

    t = 0
    while t < min(rows, cols):
        # smallest nonzero entry in the trailing block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = a[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(t, i, -(a[i][t] // p))
                    if a[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(t, j, -(a[t][j] // p))
                    if a[t][j]:
                        done = False
            if done:
                # divisibility: the pivot must divide every remaining entry
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if a[i][j] % p), None)
                if bad is None:
                    break
                add_row(bad[0], t, 1)
                continue
            # move the smallest remainder into the pivot position
            best = None
            for i in range(t, rows):
                if a[i][t] and (best is None or abs(a[i][t]) < best[0]):
                    best = (abs(a[i][t]), i, t)
            for j in range(t, cols):
                if a[t][j] and (best is None or abs(a[t][j]) < best[0]):
                    best = (abs(a[t][j]), t, j)
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return a, u, v


def invariant_factors(m: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal entries of the Smith form (including 1s)."""
    d, _, _ = smith_normal_form(m)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i]]


def hermite_normal_form(m: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form; zero rows dropped.

    Pivots are positive and entries above each pivot are reduced into
    ``[0, pivot)``, so the output is a canonical basis of the row lattice.
    """
    a = [[int(x) for x in row] for row in m if any(row)]
    if not a:
        return []
    cols = len(a[0])
    out: list[list[int]] = []
    r = 0
    for c in range(cols):
        # gcd-combine column c among rows r.. into row r
        while True:
            nz = [i for i in range(r, len(a)) if a[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[piv] = a[piv], a[r]
            changed = False
            for i in range(r + 1, len(a)):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][c]:
                        changed = True
            if not changed:
                break
        if r < len(a) and a[r][c]:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            for i in range(r):
                q = a[i][c] // a[r][c]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
            r += 1
            if r == len(a):
                break
    out = [row for row in a[:r] if any(row)]
    return out


def lattice_basis(generators: Sequence[Sequence]) -> list[list[Fraction]]:
    """Z-basis (canonical, HNF-reduced) of the group generated by rational vectors."""
    ints, d = scale_to_integer(generators)
    h = hermite_normal_form(ints)
    return [[Fraction(x, d) for x in row] for row in h]


def saturate(sub: Sequence[Sequence], ambient_rank: int | None = None) -> list[list[int]]:
    """Z-basis of (Q-span of ``sub``) intersected with Z^n.

    The rows of ``v^{-1}`` from the Smith form of the (scaled) generator matrix
    form a unimodular basis of Z^n whose first ``r`` rows span the saturation.
    The result is HNF-reduced so it is canonical.
    """
    rows = [list(r) for r in sub if any(Fraction(x) != 0 for x in r)]
    if not rows:
        return []
    n = len(rows[0]) if ambient_rank is None else ambient_rank
    ints, _ = scale_to_integer(rows)
    d, _, v = smith_normal_form(ints)
    r = sum(1 for i in range(min(len(d), n)) if d[i][i])
    vinv = inverse(v)
    basis = [as_int_vector(row) for row in vinv[:r]]
    return hermite_normal_form(basis)


def coordinates_in(basis: Sequence[Sequence], vectors: Sequence[Sequence]) -> list[list[Fraction]]:
    """Coordinates of each vector with respect to the rows of ``basis``."""
    if basis and len(basis) == len(basis[0]):
        return matmul(to_fraction_matrix(vectors), inverse(basis))
    out = []
    for v in vectors:
        c = solve_left(basis, v)
        if c is None:
            raise ValueError("vector not in the span of the basis")
        out.append(c)
    return out


def quotient_invariants(sub: Sequence[Sequence], sup: Sequence[Sequence]) -> list[int]:
    """Invariant factors (> 1) of sup / sub for full-rank sub inside sup."""
    coords = coordinates_in(sup, sub)
    ints = [as_int_vector(c) for c in coords]
    return [x for x in invariant_factors(ints) if x > 1]


def primitive_vector(v: Sequence) -> list[int]:
    """Smallest integer multiple direction of a rational vector."""
    ints, _ = scale_to_integer([v])
    g = 0
    for x in ints[0]:
        g = gcd(g, x)
    return [x // g for x in ints[0]] if g else ints[0]
