from collections import Counter

import pytest

from k3fib import nishiyama as ny
from k3fib.niemeier import HOST_IDS


@pytest.fixture(scope="module")
def records():
    return ny.enumerate_all()


def spec_for(host, description):
    for s in ny.candidate_embeddings(host):
        if s.description() == description:
            return s
    raise LookupError(description)


@pytest.mark.parametrize("host,count", [("E8^3", 2), ("E7^2D10", 5), ("A11E6D7", 5), ("D24", 1)])
def test_candidate_counts(host, count):
    assert len(ny.candidate_embeddings(host)) == count


def test_a8_cubed_has_no_placement():
    assert ny.candidate_embeddings("A8^3") == []


def test_m_gram_is_d5_plus_a1():
    from k3fib import exact as ex
    g = ny.m_gram()
    assert abs(ex.determinant(g)) == 8


def test_joint_e8_in_e8d16():
    f = ny.frame(spec_for("E8D16", "A1⊕D5⊂E8"))
    assert ny.canonical_fibers(f.fiber_types) == ("A1", "D16")
    assert abs(f.N.det) == 32 and f.WN_invariants == (2,)
    assert f.torsion == (2,)


def test_split_e7_e7():
    f = ny.frame(spec_for("E7^2D10", "A1⊂E7, D5⊂E7"))
    assert abs(f.N.det) == 8 * 16
    assert f.WN_invariants == (2, 2)


@pytest.mark.parametrize("host,desc,rank", [("E8^3", "A1⊂E8, D5⊂E8", 0), ("E8^3", "A1⊕D5⊂E8", 1),
                                            ("A11E6D7", "A1⊂A11, D5⊂E6", 2)])
def test_mw_rank(host, desc, rank):
    assert ny.mw_rank(ny.frame(spec_for(host, desc))) == rank


@pytest.mark.parametrize("host,desc,tors", [("E8D16", "A1⊕D5⊂E8", (2,)),
                                            ("D5^2A7^2", "A1⊂D5, D5⊂D5", (8,)),
                                            ("D6^4", "A1⊂D6, D5⊂D6", (2, 2))])
def test_mw_torsion(host, desc, tors):
    assert ny.mw_torsion(ny.frame(spec_for(host, desc))) == tors


def test_thirty_records(records):
    assert len(records) == 30
    assert Counter(r.mw_rank for r in records) == {0: 14, 1: 13, 2: 3}
    cmp = ny.compare_with_table1(records)
    assert cmp["ok"], cmp


def test_specific_records(records):
    by = {(r.host, r.embedding): r for r in records}
    r = by[("E7A17", "A1⊕D5⊂E7")]
    assert (r.fibers, r.mw_rank, r.torsion) == (("A17",), 1, (3,))
    r = by[("D6A9^2", "A1⊂A9, D5⊂D6")]
    assert (ny.canonical_fibers(r.fibers), r.mw_rank, r.torsion) == (("A7", "A9"), 2, ())


@pytest.mark.parametrize("host", HOST_IDS)
def test_frame_invariants(host):
    from k3fib.niemeier import get
    glue = get(host).glue_order
    for s in ny.candidate_embeddings(host):
        f = ny.frame(s)
        assert f.W.rank == 18 and abs(f.W.det) == 8
        assert f.m_primitive
        order = 1
        for t in f.torsion:
            order *= t
        assert glue % order == 0
        assert ny.wn_order_from_dets(f) == _prod(f.WN_invariants)
        assert f.W_root.rank + f.mw_rank == 18


def _prod(xs):
    o = 1
    for x in xs:
        o *= x
    return o


@pytest.mark.parametrize("host", HOST_IDS)
def test_dedup_representatives_agree(host):
    """Every placement in a class yields the same fibration record as its representative."""
    for key, specs in ny.placement_classes(host).items():
        recs = {(ny.canonical_fibers(ny.frame(s).fiber_types), ny.frame(s).mw_rank, ny.frame(s).torsion)
                for s in specs}
        assert len(recs) == 1, (host, key, recs)


def test_parallel_enumeration_matches(records):
    assert ny.enumerate_all(jobs=2) == records


def test_parse_fibers():
    assert ny.parse_fibers("A1D6A3D8") == ("A1", "A3", "D6", "D8")
    assert ny.canonical_fibers(["D3", "D2"]) == ("A1", "A1", "A3")
