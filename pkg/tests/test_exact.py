from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from k3fib import exact as ex


def small_matrix(max_rows=4, max_cols=4, bound=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(-bound, bound), min_size=c, max_size=c),
                               min_size=r, max_size=r)))


def is_unimodular(m):
    return len(m) == len(m[0]) and abs(ex.determinant(m)) == 1


# -- Smith normal form ------------------------------------------------------------

def test_snf_identity():
    d, u, v = ex.smith_normal_form(ex.identity(3))
    assert d == ex.identity(3)


def test_snf_one_by_one_root_lattice():
    assert ex.invariant_factors([[-2]]) == [2]


def test_snf_transcendental_lattice():
    assert ex.invariant_factors([[2, 0], [0, 4]]) == [2, 4]


def test_snf_non_diagonal_chain():
    # diag(2, 3) is Z/6 x Z/1
    assert ex.invariant_factors([[2, 0], [0, 3]]) == [1, 6]


@settings(max_examples=1000, deadline=None)
@given(small_matrix())
def test_snf_properties(m):
    d, u, v = ex.smith_normal_form(m)
    assert ex.matmul(ex.matmul(u, m), v) == d
    assert is_unimodular(u) and is_unimodular(v)
    rows, cols = len(m), len(m[0])
    diag = [d[i][i] for i in range(min(rows, cols))]
    assert all(d[i][j] == 0 for i in range(rows) for j in range(cols) if i != j)
    assert all(x >= 0 for x in diag)
    nz = [x for x in diag if x]
    assert diag[:len(nz)] == nz, "zeros trail the nonzero invariants"
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert len(nz) == ex.rank(m)


@settings(max_examples=300, deadline=None)
@given(small_matrix(3, 3, 5))
def test_snf_square_det_is_product(m):
    if len(m) != len(m[0]):
        return
    prod = 1
    for x in ex.invariant_factors(m):
        prod *= x
    det = abs(ex.determinant(m))
    assert (prod if len(ex.invariant_factors(m)) == len(m) else 0) == det


# -- kernels ----------------------------------------------------------------------------

def test_kernel_of_zero_matrix():
    assert len(ex.rational_kernel([[0, 0], [0, 0]], 2)) == 2


def test_kernel_of_full_rank():
    assert ex.rational_kernel([[1, 2], [3, 4]], 2) == []


def test_kernel_of_a1_pairing_in_e8():
    from k3fib.rootsys import make_root_lattice
    g = [list(r) for r in make_root_lattice("E", 8).gram]
    row = ex.matmul([[1, 0, 0, 0, 0, 0, 0, 0]], g)
    k = ex.rational_kernel(row, 8)
    assert len(k) == 7
    assert all(ex.dot(row[0], v) == 0 for v in k)


@settings(max_examples=300, deadline=None)
@given(small_matrix(3, 5, 4))
def test_kernel_rank_nullity(m):
    k = ex.rational_kernel(m, len(m[0]))
    assert len(k) + ex.rank(m) == len(m[0])
    for v in k:
        assert all(x == 0 for x in ex.matvec(m, v))


# -- saturation --------------------------------------------------------------------------

def test_saturate_scaling():
    assert ex.saturate([[2, 0]], 2) == [[1, 0]]


def test_saturate_index_two():
    sat = ex.saturate([[1, 1], [1, -1]], 2)
    assert abs(ex.determinant(sat)) == 1
    # brute force: (1, 0) is in the rational span and in Z^2
    assert ex.solve_left(sat, [1, 0]) is not None


def test_saturate_idempotent_on_primitive():
    sub = [[1, 2, 3], [0, 1, 1]]
    sat = ex.saturate(sub, 3)
    assert ex.hermite_normal_form(sat) == ex.hermite_normal_form(sub)


def _gcd_minors_is_one(rows):
    facs = ex.invariant_factors(rows)
    return all(f == 1 for f in facs)


@settings(max_examples=1000, deadline=None)
@given(small_matrix(3, 4, 6))
def test_saturation_properties(m):
    sat = ex.saturate(m, len(m[0]))
    r = ex.rank(m)
    assert len(sat) == r
    if not r:
        return
    # same rational span
    assert ex.rank(sat + [list(row) for row in m]) == r
    # primitive: Z^n / sat is free
    assert _gcd_minors_is_one(sat)
    # every original row is an integral combination of the saturation
    for row in m:
        c = ex.solve_left(sat, row)
        assert c is not None and all(Fraction(x).denominator == 1 for x in c)
    # idempotent and canonical
    assert ex.saturate(sat, len(m[0])) == sat


@settings(max_examples=200, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=2, max_size=2), min_size=1, max_size=2))
def test_saturation_brute_force_2d(m):
    """Points of the rational span with small coordinates lie in the saturation."""
    sat = ex.saturate(m, 2)
    r = ex.rank(m)
    for p in product(range(-3, 4), repeat=2):
        in_span = ex.rank([list(row) for row in m] + [list(p)]) == r if r else not any(p)
        if in_span and any(p):
            c = ex.solve_left(sat, list(p))
            assert c is not None and all(x.denominator == 1 for x in c)


# -- misc ----------------------------------------------------------------------------------

def test_hnf_canonical_under_unimodular_change():
    a = [[2, 4, 4], [-6, 6, 12]]
    b = [[a[0][j] + a[1][j] for j in range(3)], a[1]]
    assert ex.hermite_normal_form(a) == ex.hermite_normal_form(b)


def test_inverse_and_determinant():
    m = [[2, 1], [1, 1]]
    assert ex.determinant(m) == 1
    assert ex.matmul(m, ex.inverse(m)) == [[1, 0], [0, 1]]


def test_quotient_invariants():
    assert ex.quotient_invariants([[2, 0], [0, 4]], ex.identity(2)) == [2, 4]


def test_as_int_vector_rejects_fractions():
    with pytest.raises(ValueError):
        ex.as_int_vector([Fraction(1, 2)])
