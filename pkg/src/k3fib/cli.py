"""Command-line entry point: ``k3fib <group> <command> ...``.

Exit codes: 0 when every check passes, 1 when a check fails, 2 for usage
or input errors.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import catalog as cat
from . import niemeier as nm
from . import nishiyama as ny
from . import report as rp
from .expr import ExprError, evaluate
from .lattice import Lattice, LatticeError
from .poly import Poly, RatFunc, factor
from .sections import NonTorsion, SectionPoint, Surface, on_curve
from .tate import euler_sum
from .weierstrass import ModelError, normalize_rational

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, data, markdown=None):
    if getattr(args, "markdown", False):
        sys.stdout.write(markdown(data) if markdown else rp.mapping_markdown(data))
    else:
        sys.stdout.write(rp.to_json(data))


# -- niemeier -------------------------------------------------------------------------

def cmd_niemeier_list(args):
    rows = [{"id": n.id, "root_types": list(n.component_labels), "glue_invariants": list(n.glue_factors),
             "glue_order": n.glue_order, "glue_known": n.has_glue} for n in nm.all_niemeier()]
    _emit(args, rows, lambda rs: rp.markdown_table(
        ["id", "root type", "glue", "order", "glue vectors"],
        [(r["id"], " ".join(r["root_types"]), rp.torsion_str(r["glue_invariants"]), r["glue_order"],
          r["glue_known"]) for r in rs]))
    return OK


def cmd_niemeier_validate(args):
    ids = [args.id] if args.id else list(nm.HOST_IDS)
    try:
        rows = [nm.validate(i) for i in ids]
    except KeyError as exc:
        raise UsageError(str(exc)) from None
    _emit(args, rows, rp.niemeier_markdown)
    return OK if all(r["ok"] for r in rows) else FAILED


# -- nishiyama --------------------------------------------------------------------------

def cmd_nishiyama_enumerate(args):
    records = ny.enumerate_all(jobs=args.jobs)
    cmp = ny.compare_with_table1(records)
    if args.markdown:
        sys.stdout.write(ny_enumerate_markdown(records, cmp))
    else:
        sys.stdout.write(rp.to_json({"records": [r.to_dict() for r in records],
                                     "rank_histogram": cmp["rank_histogram"],
                                     "reference": {k: cmp[k] for k in ("ok", "missing", "extra", "mismatched")}}))
    return OK if cmp["ok"] else FAILED


def ny_enumerate_markdown(records, cmp) -> str:
    h = cmp["rank_histogram"]
    tail = (f"\nrank 0: {h[0]}, rank 1: {h[1]}, rank 2: {h[2]}; "
            f"reference table {'matches' if cmp['ok'] else 'DIFFERS'}\n")
    return rp.records_markdown(records) + tail


def cmd_nishiyama_frame(args):
    try:
        specs = ny.candidate_embeddings(args.host)
    except KeyError as exc:
        raise UsageError(str(exc)) from None
    if not 0 <= args.index < len(specs):
        raise UsageError(f"{args.host} has {len(specs)} placements; index must be in 0..{len(specs) - 1}")
    f = ny.frame(specs[args.index])
    if args.dump:
        data = ny.frame_dump(f)
    else:
        data = {"host": f.spec.host, "embedding": f.spec.description(), "W_rank": f.W.rank,
                "W_det": f.W.det, "W_root": list(f.W_root.labels), "mw_rank": f.mw_rank,
                "torsion": list(f.torsion), "W_mod_N": list(f.WN_invariants)}
    _emit(args, data)
    ok = f.W.rank == 18 and abs(f.W.det) == cat.NS_DISC
    return OK if ok else FAILED


# -- elliptic ---------------------------------------------------------------------------

def _model_from_file(path: str):
    """Read {"parameter": "t", "a": [a1, a2, a3, a4, a6], "points": [[x, y], ...]}.

    Each a_i is an expression in the parameter or a list of coefficient
    strings (constant term first).
    """
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    var = doc.get("parameter", "t")
    env = {var: RatFunc(Poly.t())}
    a = doc.get("a")
    if not isinstance(a, list) or len(a) != 5:
        raise UsageError(f"{path}: 'a' must list the five coefficients a1 a2 a3 a4 a6")
    try:
        coeffs = [RatFunc(Poly.from_list(c)) if isinstance(c, list)
                  else RatFunc.coerce(evaluate(str(c), env, one=RatFunc(1))) for c in a]
        model, scale = normalize_rational(coeffs)
        points = []
        for x, y in doc.get("points", []):
            xs, ys = (RatFunc.coerce(evaluate(str(v), env, one=RatFunc(1))) for v in (x, y))
            points.append((f"{x}, {y}", SectionPoint.of(xs * RatFunc(scale ** 2), ys * RatFunc(scale ** 3))))
    except (ExprError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"{path}: {exc}") from None
    return var, model, points


def _resolve_model(target: str):
    try:
        e = cat.get_entry(target)
    except KeyError:
        e = None
    if e is not None:
        return e.id, e.model, [(p.label, p.point) for p in e.points], e
    var, model, points = _model_from_file(target)
    return var, model, points, None


def _point_data(surface: Surface, var: str, label: str, P: SectionPoint) -> dict:
    if not on_curve(surface.model, P):
        return {"point": label, "on_curve": False}
    order = surface.torsion_order(P)
    comps = {}
    for f in surface.fibers:
        if f.reducible:
            comps[f.place.label(var)] = surface.component(f.place, P).component
    return {"point": label, "on_curve": True, "x": P.x, "y": P.y,
            "order": "inf" if isinstance(order, NonTorsion) else int(order),
            "height": surface.height(P), "dot_zero": surface.dot_zero(P), "components": comps}


def cmd_elliptic_analyze(args):
    var, model, points, entry = _resolve_model(args.target)
    surface = Surface(model)
    try:
        fibers = surface.fibers
    except ModelError as exc:
        sys.stdout.write(rp.to_json({"error": str(exc)}))
        return FAILED
    disc = model.disc
    roots = cat.reducible_types(fibers)
    data = {
        "parameter": var,
        "a": [ai.pretty(var) for ai in model.a],
        "discriminant": {"leading": disc.lc,
                         "factors": [{"factor": p.pretty(var), "multiplicity": m} for p, m in factor(disc)]},
        "fibers": [{"place": f.place.label(var), "degree": f.place.degree, "type": f.name,
                    "euler": f.euler, "root_type": f.root_type} for f in fibers],
        "euler_sum": euler_sum(fibers),
        "reducible": list(roots),
        "trivial_root_rank": sum(int(r[1:]) for r in roots),
        "points": [_point_data(surface, var, lab, P) for lab, P in points],
    }
    if entry is not None:
        data["ordinal"] = entry.ordinal
        data["equation"] = entry.equation
    md = lambda d: rp.markdown_table(["place", "type", "root type", "euler"],
                                     [(f["place"], f["type"], f["root_type"], f["euler"]) for f in d["fibers"]])
    _emit(args, data, md)
    return OK if data["euler_sum"] == 24 else FAILED


def cmd_elliptic_height(args):
    var, model, points, _ = _resolve_model(args.target)
    if args.point.isdigit():
        i = int(args.point)
        if not 0 <= i < len(points):
            raise UsageError(f"point index must be in 0..{len(points) - 1}")
        label, P = points[i]
    else:
        hits = [(lab, P) for lab, P in points if lab == args.point]
        if not hits:
            raise UsageError(f"no point labelled {args.point!r}; have {[lab for lab, _ in points]}")
        label, P = hits[0]
    data = _point_data(Surface(model), var, label, P)
    _emit(args, data)
    return OK if data["on_curve"] else FAILED


# -- verify -------------------------------------------------------------------------------

def cmd_verify(args):
    if args.target == "all":
        report = cat.verify_all(jobs=args.jobs)
    else:
        try:
            e = cat.get_entry(args.target)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
        one = cat.verify_entry(e)
        report = {"schema": "k3fib-report/1", "entries": [one],
                  "bijection": {"ok": None, "duplicates": [], "missing": []},
                  "summary": {"entries": 1, "failed": int(not one["ok"]), "passed": int(one["ok"]),
                              "discrepancies": [{"id": one["id"], "check": f["check"]}
                                                for f in one["findings"] if f["status"] == "discrepancy"]}}
    if args.markdown:
        sys.stdout.write(rp.verify_markdown(report))
    else:
        sys.stdout.write(rp.to_json(report))
    return OK if report["summary"]["failed"] == 0 else FAILED


# -- lattice ------------------------------------------------------------------------------

def cmd_lattice_info(args):
    try:
        with open(args.file, encoding="utf-8") as fh:
            lat = Lattice.from_json(fh.read())
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read lattice from {args.file}: {exc}") from None
    data = {"label": lat.label, "rank": lat.rank, "det": lat.det, "even": lat.is_even,
            "negative_definite": lat.is_negative_definite}
    if lat.det:
        dg = lat.discriminant_group
        data["discriminant_group"] = list(dg.invariant_factors)
        data["q_values"] = list(dg.q_values)
    if lat.is_negative_definite:
        data["roots"] = len(lat.roots)
        data["root_types"] = list(lat.root_decomposition().labels)
    _emit(args, data)
    return OK


# -- parser ---------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    g = fmt.add_mutually_exclusive_group()
    g.add_argument("--json", action="store_true", help="JSON output (default)")
    g.add_argument("--markdown", action="store_true", help="markdown tables")
    jobs = argparse.ArgumentParser(add_help=False)
    jobs.add_argument("--jobs", type=int, default=1, help="worker processes")

    p = argparse.ArgumentParser(prog="k3fib", description="Elliptic fibrations of the K3 surface Y2.")
    sub = p.add_subparsers(dest="group", required=True)

    g_n = sub.add_parser("niemeier", help="Niemeier lattices").add_subparsers(dest="cmd", required=True)
    g_n.add_parser("list", parents=[fmt]).set_defaults(func=cmd_niemeier_list)
    v = g_n.add_parser("validate", parents=[fmt])
    v.add_argument("id", nargs="?")
    v.set_defaults(func=cmd_niemeier_validate)

    g_y = sub.add_parser("nishiyama", help="fibrations from lattice embeddings").add_subparsers(
        dest="cmd", required=True)
    g_y.add_parser("enumerate", parents=[fmt, jobs]).set_defaults(func=cmd_nishiyama_enumerate)
    fr = g_y.add_parser("frame", parents=[fmt])
    fr.add_argument("host")
    fr.add_argument("index", type=int)
    fr.add_argument("--dump", action="store_true", help="include Gram matrices")
    fr.set_defaults(func=cmd_nishiyama_frame)

    g_e = sub.add_parser("elliptic", help="Weierstrass models").add_subparsers(dest="cmd", required=True)
    an = g_e.add_parser("analyze", parents=[fmt])
    an.add_argument("target", help="catalog id or ordinal, or a JSON model file")
    an.set_defaults(func=cmd_elliptic_analyze)
    ht = g_e.add_parser("height", parents=[fmt])
    ht.add_argument("target")
    ht.add_argument("--point", required=True, help="point index or label")
    ht.set_defaults(func=cmd_elliptic_height)

    vf = sub.add_parser("verify", parents=[fmt, jobs], help="cross-check the catalog")
    vf.add_argument("target", help="'all', an ordinal or a parameter id")
    vf.set_defaults(func=cmd_verify)

    g_l = sub.add_parser("lattice", help="lattice utilities").add_subparsers(dest="cmd", required=True)
    li = g_l.add_parser("info", parents=[fmt])
    li.add_argument("file")
    li.set_defaults(func=cmd_lattice_info)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    if getattr(args, "jobs", 1) < 1:
        parser.print_usage(sys.stderr)
        print("k3fib: --jobs must be positive", file=sys.stderr)
        return USAGE
    try:
        return args.func(args)
    except (UsageError, cat.CatalogError, LatticeError) as exc:
        parser.print_usage(sys.stderr)
        print(f"k3fib: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
