import json

import pytest

from k3fib import catalog as cat
from k3fib.nishiyama import table1_records
from k3fib.poly import Poly


@pytest.fixture(scope="module")
def report():
    return cat.verify_all()


def test_thirty_entries():
    es = cat.load_catalog()
    assert len(es) == 30 and [e.ordinal for e in es] == list(range(1, 31))


def test_entry_t_coefficients():
    e = cat.get_entry(14)
    assert e.id == "t"
    t = Poly.t()
    assert e.model.a == (Poly(), t * (t * t + Poly([1]) + t.scale(4)), Poly(), t ** 4, Poly())


def test_entry_s_expectations():
    e = cat.get_entry("s")
    assert e.torsion == [8]
    assert cat.multiset_str(cat.fiber_multiset([(f.place, f.kodaira) for f in e.fibers])) == "2I8,I4,I2,2I1"


def test_lookup_errors():
    with pytest.raises(KeyError):
        cat.get_entry(999)


def test_bad_schema(tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"schema": "other", "entries": []}))
    with pytest.raises(cat.CatalogError):
        cat.load_catalog(p)


def test_unreadable_catalog(tmp_path):
    with pytest.raises(cat.CatalogError):
        cat.load_catalog(tmp_path / "missing.json")


def _finding(rep, check):
    return [f for f in rep["findings"] if f["check"] == check]


def test_verify_h():
    r = cat.verify_entry(cat.get_entry("h"))
    assert r["ok"]
    assert _finding(r, "fibers")[0]["computed"] == "2II*,I2,2I1"
    assert r["host"] == "E8^3" and table1_records()[r["table1_row"] - 1].fibers == ("A1", "E8", "E8")
    assert _finding(r, "point")[0]["height"] == "4"
    # positions differ from the printed table by h -> -h
    assert _finding(r, "fiber_positions")[0]["status"] == "discrepancy"


def test_verify_p():
    e = cat.get_entry("p")
    r = cat.verify_entry(e)
    assert r["ok"] and _finding(r, "torsion")[0]["generated"] == [2, 2]
    assert {p.x_raw for p in e.points if p.order == 2} == {"0", "p", "p*(p + 1)^2"}
    assert table1_records()[r["table1_row"] - 1].fibers == ("A1", "A3", "D6", "D8")


def test_verify_i():
    r = cat.verify_entry(cat.get_entry("i"))
    assert r["ok"] and _finding(r, "torsion")[0]["generated"] == []
    assert _finding(r, "fibers")[0]["computed"] == "I13*,I2,3I1"
    assert r["host"] == "D24"


@pytest.mark.parametrize("fibers,rank,tors,host", [(["A1", "D8", "D8"], 1, [2], "D8^3"),
                                                   (["A17"], 1, [3], "E7A17"),
                                                   (["A7", "A9"], 2, [], "D6A9^2")])
def test_match_table1(fibers, rank, tors, host):
    m = cat.match_table1(fibers, rank, tors)
    assert m["ok"] and m["record"].host == host


def test_match_table1_rejects():
    assert cat.match_table1(["A1"], 0, [])["reason"] == "no matching record"


def test_parametrization_s():
    v = cat.spot_check_parametrization(cat.get_entry("s"))
    assert v["status"] == "holds"


def test_parametrization_k_is_inconsistent():
    v = cat.spot_check_parametrization(cat.get_entry("k"))
    assert v["status"] == "violated"
    assert any(s["value"] == "16/3" for s in v["samples"])


def test_parametrization_skipped_without_maps():
    assert cat.spot_check_parametrization(cat.get_entry("i"))["status"] == "skipped"


def test_all_entries_pass(report):
    assert report["summary"]["failed"] == 0
    assert all(r["ok"] for r in report["entries"])


def test_bijection(report):
    rows = [r["table1_row"] for r in report["entries"]]
    assert sorted(rows) == list(range(1, 31))
    assert report["bijection"] == {"ok": True, "duplicates": [], "missing": []}


def test_recorded_discrepancies(report):
    got = {(d["id"], d["check"]) for d in report["summary"]["discrepancies"]}
    assert got == {("k", "parametrization"), ("r", "final_table_torsion"), ("h", "fiber_positions"),
                   ("n", "printed_regulator"), ("psi", "fiber_positions"), ("delta", "final_table_fibers")}


def test_normalization_audits():
    for e in cat.builtin_catalog():
        assert cat.check_normalization(e) == [], e.id


def test_alpha_is_a_cubic():
    r = cat.verify_entry(cat.get_entry("alpha"))
    assert _finding(r, "fibers")[0]["computed"] == "I14,I0*,4I1"


def test_phi_euler():
    f = _finding(cat.verify_entry(cat.get_entry("phi")), "fibers")[0]
    assert f["computed"] == "I7*,III*,2I1" and f["euler"] == 24
