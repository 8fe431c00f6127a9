from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from k3fib.catalog import get_entry, parse_place
from k3fib.sections import (O, NonTorsion, SectionPoint, Surface, add, multiply, negate, on_curve)


def surf(eid):
    return Surface(get_entry(eid).model)


def pt(eid, label):
    return get_entry(eid).point(label).point


def test_identity_and_inverse():
    S = surf("k")
    P = pt("k", "P")
    assert add(S.model, P, O) == P and add(S.model, O, P) == P
    assert add(S.model, P, negate(S.model, P)) == O


def test_s_multiples():
    S = surf("s")
    A = pt("s", "A")
    assert S.torsion_order(A) == 8
    # 2A is a 4-torsion point, 4A the 2-torsion point
    assert S.torsion_order(multiply(S.model, A, 2)) == 4
    assert S.torsion_order(multiply(S.model, A, 4)) == 2
    assert multiply(S.model, A, 8) == O


@pytest.mark.parametrize("eid,label,order", [("s", "A", 8), ("k", "T2", 2), ("k", "T4", 4), ("j", "T", 3),
                                             ("w", "T", 6), ("m", "T", 4), ("b", "T", 3), ("c", "T", 3)])
def test_torsion_orders(eid, label, order):
    assert surf(eid).torsion_order(pt(eid, label)) == order


def test_non_torsion_marker():
    r = surf("k").torsion_order(pt("k", "P"))
    assert isinstance(r, NonTorsion) and r == 0 and repr(r) == "NonTorsion"


@pytest.mark.parametrize("place,j", [("0", 3), ("inf", 1), ("1", 1), ("-1", 1)])
def test_component_index_on_s(place, j):
    assert surf("s").component_index(parse_place(place, "s"), pt("s", "A")) == j


def test_zero_section_meets_identity_component():
    S = surf("s")
    for f in S.fibers:
        assert S.component(f.place, O).component == "0"


@pytest.mark.parametrize("eid,label,h", [("k", "P", Fraction(4, 3)), ("t", "P", 1), ("a", "P", Fraction(1, 24)),
                                         ("d", "P", 1), ("r", "P", 1), ("e", "P", 1),
                                         ("mu", "P", Fraction(1, 15)), ("alpha", "P", Fraction(1, 7)),
                                         ("b", "P", Fraction(4, 3)), ("h", "P", 4), ("o", "P", 4),
                                         ("c", "P", 4), ("psi", "P", 4)])
def test_heights(eid, label, h):
    assert surf(eid).height(pt(eid, label)) == h


def test_torsion_height_zero():
    for eid, label in [("s", "A"), ("k", "T4"), ("w", "T")]:
        assert surf(eid).height(pt(eid, label)) == 0


@pytest.mark.parametrize("eid,det", [("v", Fraction(1, 10)), ("l", Fraction(1, 5))])
def test_regulators(eid, det):
    e = get_entry(eid)
    assert surf(eid).regulator([e.point(g).point for g in e.generators]) == det


def test_printed_n_points_are_not_sections():
    m = get_entry("n").model
    from k3fib.poly import Poly, RatFunc
    n = RatFunc(Poly.t())
    for x in (n + RatFunc(1), RatFunc(1) - n):
        assert not on_curve(m, SectionPoint.of(x, RatFunc(0)))


def test_n_regulator_from_true_sections():
    e = get_entry("n")
    assert surf("n").regulator([e.point(g).point for g in e.generators]) == Fraction(1, 4)


# -- group-law fuzz -------------------------------------------------------------------------

RANK2 = {"v": ("P1", "P2"), "l": ("P1", "P2")}
coef = st.integers(-2, 2)


def combo(S, gens, cs):
    out = O
    for g, c in zip(gens, cs):
        out = add(S.model, out, multiply(S.model, g, c))
    return out


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sorted(RANK2)), st.tuples(coef, coef), st.tuples(coef, coef), st.tuples(coef, coef))
def test_associativity(eid, a, b, c):
    S = surf(eid)
    gens = [pt(eid, g) for g in RANK2[eid]]
    P, Q, R = (combo(S, gens, x) for x in (a, b, c))
    assert add(S.model, add(S.model, P, Q), R) == add(S.model, P, add(S.model, Q, R))
    assert add(S.model, P, Q) == add(S.model, Q, P)
    assert on_curve(S.model, add(S.model, P, Q))


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(sorted(RANK2)), st.tuples(coef, coef))
def test_height_is_quadratic(eid, cs):
    S = surf(eid)
    gens = [pt(eid, g) for g in RANK2[eid]]
    M = S.height_matrix(gens)
    a, b = cs
    want = a * a * M[0][0] + 2 * a * b * M[0][1] + b * b * M[1][1]
    assert S.height(combo(S, gens, cs)) == want


def test_pairing_symmetric_bilinear():
    S = surf("v")
    P, Q = pt("v", "P1"), pt("v", "P2")
    assert S.pairing(P, Q) == S.pairing(Q, P)
    assert S.pairing(multiply(S.model, P, 2), Q) == 2 * S.pairing(P, Q)


def test_torsion_translation_keeps_height():
    S = surf("k")
    P, T = pt("k", "P"), pt("k", "T4")
    assert S.height(add(S.model, P, T)) == S.height(P)
