import json
import subprocess
import sys


from k3fib.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_unknown_id(capsys):
    code, out, err = run(capsys, "verify", "999")
    assert code == 2 and "999" in err


def test_unknown_flag(capsys):
    code, _, _ = run(capsys, "verify", "all", "--bogus")
    assert code == 2


def test_missing_subcommand(capsys):
    assert run(capsys)[0] == 2


def test_help_exits_zero(capsys):
    assert run(capsys, "--help")[0] == 0


def test_verify_single_json(capsys):
    code, out, _ = run(capsys, "verify", "s", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["schema"] == "k3fib-report/1" and rep["entries"][0]["id"] == "s"


def test_verify_all_json(capsys):
    code, out, _ = run(capsys, "verify", "all", "--json")
    rep = json.loads(out)
    assert code == 0 and len(rep["entries"]) == 30 and rep["bijection"]["ok"]


def test_verify_markdown(capsys):
    code, out, _ = run(capsys, "verify", "13", "--markdown")
    assert code == 0 and "| 13 | h |" in out


def test_niemeier_list(capsys):
    code, out, _ = run(capsys, "niemeier", "list")
    assert code == 0 and len(json.loads(out)) == 24


def test_niemeier_validate_one(capsys):
    code, out, _ = run(capsys, "niemeier", "validate", "D9A15")
    assert code == 0 and json.loads(out)[0]["glue_invariants"] == [8]


def test_nishiyama_frame(capsys):
    code, out, _ = run(capsys, "nishiyama", "frame", "D24", "0", "--dump")
    d = json.loads(out)
    assert code == 0 and d["W"]["rank"] == 18 and abs(d["W"]["det"]) == 8


def test_nishiyama_frame_bad_index(capsys):
    assert run(capsys, "nishiyama", "frame", "D24", "5")[0] == 2


def test_nishiyama_enumerate_markdown(capsys):
    code, out, _ = run(capsys, "nishiyama", "enumerate", "--markdown")
    rows = [l for l in out.splitlines() if l.startswith("| ") and not l.startswith("| #")]
    assert code == 0 and len(rows) == 30
    assert "rank 0: 14, rank 1: 13, rank 2: 3" in out


def test_elliptic_analyze_catalog(capsys):
    code, out, _ = run(capsys, "elliptic", "analyze", "beta")
    d = json.loads(out)
    assert code == 0 and d["euler_sum"] == 24
    assert {(f["place"], f["type"]) for f in d["fibers"]} == {("0", "III*"), ("inf", "I2*"), ("1", "I1*")}


def test_elliptic_analyze_file(capsys, tmp_path):
    p = tmp_path / "m.json"
    p.write_text(json.dumps({"parameter": "t", "a": ["0", "t*(t^2 + 1 + 4*t)", "0", "t^4", "0"],
                             "points": [["-t^3", "2*t^4"]]}))
    code, out, _ = run(capsys, "elliptic", "analyze", str(p))
    d = json.loads(out)
    assert code == 0 and d["points"][0]["height"] == "1"


def test_elliptic_analyze_bad_file(capsys, tmp_path):
    p = tmp_path / "m.json"
    p.write_text("{not json")
    assert run(capsys, "elliptic", "analyze", str(p))[0] == 2


def test_elliptic_height(capsys):
    code, out, _ = run(capsys, "elliptic", "height", "k", "--point", "P")
    d = json.loads(out)
    assert code == 0 and d["height"] == "4/3" and d["order"] == "inf"


def test_lattice_info(capsys, tmp_path):
    from k3fib.rootsys import make_root_lattice
    p = tmp_path / "l.json"
    p.write_text(make_root_lattice("E", 7).lattice.to_json())
    code, out, _ = run(capsys, "lattice", "info", str(p))
    d = json.loads(out)
    assert code == 0 and d["discriminant_group"] == [2] and d["roots"] == 126 and d["root_types"] == ["E7"]


def test_lattice_info_unreadable(capsys, tmp_path):
    assert run(capsys, "lattice", "info", str(tmp_path / "nope.json"))[0] == 2


def test_console_script_exit_code():
    r = subprocess.run([sys.executable, "-m", "k3fib.cli", "verify", "999"], capture_output=True, text=True)
    assert r.returncode == 2
