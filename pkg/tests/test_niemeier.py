import pytest

from k3fib import niemeier as nm
from k3fib.lattice import LatticeError

GLUE_ORDERS = {"E8^3": 1, "E8D16": 2, "E7^2D10": 4, "E7A17": 6, "D24": 2, "D12^2": 4, "D8^3": 8,
               "D9A15": 8, "E6^4": 9, "A11E6D7": 12, "D6^4": 16, "D6A9^2": 20, "D5^2A7^2": 32}


def test_twenty_four_lattices():
    lats = nm.all_niemeier()
    assert len(lats) == 24
    assert len({n.id for n in lats}) == 24
    # every Niemeier root system other than the Leech lattice has rank 24
    assert sum(1 for n in lats if n.root_rank == 0) == 1
    assert all(n.root_rank in (0, 24) for n in lats)


@pytest.mark.parametrize("nid,factors", [("E8^3", ()), ("D9A15", (8,)), ("A11E6D7", (12,)),
                                         ("D5^2A7^2", (4, 8))])
def test_glue_factors(nid, factors):
    assert tuple(nm.get(nid).glue_factors) == factors


@pytest.mark.parametrize("nid", nm.HOST_IDS)
def test_hosts_realize(nid):
    r = nm.realize(nid)
    assert r.ok
    assert r.lattice.rank == 24 and abs(r.lattice.det) == 1 and r.lattice.is_even
    assert len(r.glue_elements) == GLUE_ORDERS[nid]
    assert len(r.glue_elements) ** 2 == abs(r.root_lattice.det)


@pytest.mark.parametrize("nid", nm.HOST_IDS)
def test_validate(nid):
    v = nm.validate(nid)
    assert v["ok"], v
    assert v["root_types"] == v["declared_root_types"]


def test_e8_cubed_root_count():
    r = nm.realize("E8^3")
    roots = sum(len(nm.make_root_lattice(f, k).roots) for f, k in r.niemeier.components)
    assert roots == 720 and not r.extra_root_cosets


def test_unknown_id():
    with pytest.raises(KeyError):
        nm.get("A1^24x")


def test_glue_unavailable_for_non_hosts():
    missing = [n for n in nm.all_niemeier() if not n.has_glue]
    assert missing
    with pytest.raises(LatticeError):
        nm.realize(missing[0].id)


def test_printed_glue_realizations():
    """Hosts whose printed glue words differ from the corrected ones are reported, not trusted."""
    for n in nm.all_niemeier():
        if n.printed_glue is not None and n.printed_glue != n.glue:
            try:
                ok = nm.realize(n.id, printed=True).ok
            except LatticeError:
                ok = False
            assert not ok, n.id
