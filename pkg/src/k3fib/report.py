"""Deterministic JSON and markdown rendering of results."""
from __future__ import annotations

import json
from fractions import Fraction

from .poly import Poly, RatFunc


def canonical(obj):
    """Plain JSON data with rationals as "p/q" strings and tuples as lists."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return int(obj)
    if isinstance(obj, Fraction):
        return str(obj.numerator) if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, float):
        return "inf" if obj == float("inf") else repr(obj)
    if isinstance(obj, (Poly, RatFunc)):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_json(obj) -> str:
    # keys keep insertion order: every producer builds dicts in a fixed order
    return json.dumps(canonical(obj), indent=2, ensure_ascii=False) + "\n"


def _cell(v) -> str:
    if isinstance(v, (list, tuple)):
        return " ".join(_cell(x) for x in v) if v else "-"
    c = canonical(v)
    return "-" if c is None or c == "" else str(c).replace("|", "\\|")


def markdown_table(headers, rows) -> str:
    lines = ["| " + " | ".join(headers) + " |", "|" + "---|" * len(headers)]
    lines += ["| " + " | ".join(_cell(v) for v in row) + " |" for row in rows]
    return "\n".join(lines) + "\n"


def torsion_str(factors) -> str:
    return " x ".join(f"Z/{n}" for n in factors) if factors else "0"


# -- specific reports -----------------------------------------------------------------

def records_markdown(records) -> str:
    rows = [(i + 1, r.host, r.embedding, "".join(r.fibers) or "-", r.mw_rank, torsion_str(r.torsion))
            for i, r in enumerate(records)]
    return markdown_table(["#", "host", "embedding", "reducible fibers", "rank", "torsion"], rows)


_BIJ = {True: "ok", False: "broken", None: "n/a"}


def verify_markdown(report: dict) -> str:
    rows = []
    for r in report["entries"]:
        fib = next((f for f in r["findings"] if f["check"] == "fibers"), {})
        tors = next((f for f in r["findings"] if f["check"] == "torsion"), {})
        notes = sorted({f["check"] for f in r["findings"] if f["status"] == "discrepancy"})
        row = "-" if r["table1_row"] is None else r["table1_row"]
        rows.append((r["ordinal"], r["id"], fib.get("computed", "?"), row, r["host"],
                     torsion_str(tors.get("generated", [])),
                     "ok" if r["ok"] else "FAIL: " + ", ".join(r["failures"]),
                     ", ".join(notes) or "-"))
    s = report["summary"]
    head = (f"entries: {s['entries']}, passed: {s['passed']}, failed: {s['failed']}, "
            f"bijection: {_BIJ[report['bijection']['ok']]}\n\n")
    return head + markdown_table(["#", "id", "fibers", "row", "host", "torsion", "status", "discrepancies"],
                                 rows)


def niemeier_markdown(rows: list[dict]) -> str:
    return markdown_table(
        ["id", "root type", "glue", "rank", "det", "even", "ok"],
        [(r["id"], " ".join(r["root_types"]), torsion_str(r["glue_invariants"]), r["rank"], r["det"],
          r["even"], r["ok"]) for r in rows])


def mapping_markdown(d: dict) -> str:
    return markdown_table(["field", "value"], [(k, v) for k, v in canonical(d).items()])
