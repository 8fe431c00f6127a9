"""The 30-model catalog and the checks tying it to the lattice enumeration."""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .expr import ExprError, evaluate, split_equation
from .nishiyama import canonical_fibers, table1_records
from .poly import Poly, RatFunc
from .sections import NonTorsion, SectionPoint, Surface, add, on_curve
from .tate import euler_number, parse_kodaira
from .weierstrass import INFINITY, ModelError, Place, WeierstrassModel, normalize_rational

SCHEMA = "k3fib-catalog/1"
NS_DISC = 8
SAMPLE_VALUES = [Fraction(v) for v in (2, 3, 5, -3, 7, Fraction(1, 2), Fraction(-1, 3), 11)]


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class NamedPoint:
    label: str
    x_raw: str
    y_raw: str
    point: SectionPoint            # on the normalized model
    order: int | None = None
    height: Fraction | None = None
    components: dict | None = None


@dataclass(frozen=True)
class ExpectedFiber:
    place: Place
    label: str                     # as written in the source table
    kodaira: str

    @property
    def euler(self) -> int:
        return euler_number(*parse_kodaira(self.kodaira)) * self.place.degree


@dataclass
class CatalogEntry:
    ordinal: int
    id: str
    variables: list[str]
    equation: str
    raw_a: list[str]
    scale: Poly
    model: WeierstrassModel
    fibers: list[ExpectedFiber]
    final_table: dict
    rank: int
    torsion: list[int]
    points: list[NamedPoint]
    generators: list[str]
    regulator: Fraction | None = None
    param_map: dict | None = None
    printed: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def point(self, label: str) -> NamedPoint:
        for p in self.points:
            if p.label == label:
                return p
        raise KeyError(label)

    def raw_env(self, t_value=None) -> dict:
        return {self.id: RatFunc(Poly.t()) if t_value is None else t_value}


# -- loading -------------------------------------------------------------------------

def _catalog_text(path) -> str:
    if path is None:
        return resources.files("k3fib").joinpath("data/catalog.json").read_text(encoding="utf-8")
    return Path(path).read_text(encoding="utf-8")


def _need(d: dict, key: str, where: str):
    if key not in d:
        raise CatalogError(f"{where}: missing field {key!r}")
    return d[key]


def _poly(xs, where: str) -> Poly:
    try:
        return Poly.from_list(xs)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise CatalogError(f"{where}: malformed polynomial {xs!r} ({exc})") from None


def parse_place(text: str, var: str) -> Place:
    """'inf', a rational root such as '-5/2', or a polynomial in ``var``."""
    text = text.strip()
    if text == "inf":
        return INFINITY
    val = evaluate(text, {var: RatFunc(Poly.t())}, one=RatFunc(1))
    val = RatFunc.coerce(val)
    if not val.is_poly():
        raise CatalogError(f"place {text!r} is not a polynomial")
    p = val.num
    if p.degree <= 0:
        p = Poly.t() - p.coeff(0)
    return Place(p.monic())


def _entry(raw: dict, n: int) -> CatalogEntry:
    where = f"entry {raw.get('ordinal', n)}"
    pid = _need(raw, "id", where)
    a = _need(raw, "a", where)
    if len(a) != 5:
        raise CatalogError(f"{where}.a: expected five coefficient arrays")
    model = WeierstrassModel(*(_poly(ai, f"{where}.a[{i}]") for i, ai in enumerate(a)))
    points = []
    for j, p in enumerate(raw.get("points", [])):
        w = f"{where}.points[{j}]"
        x = RatFunc(_poly(_need(p, "x_num", w), w), _poly(_need(p, "x_den", w), w))
        y = RatFunc(_poly(_need(p, "y_num", w), w), _poly(_need(p, "y_den", w), w))
        points.append(NamedPoint(p["label"], p["x"], p["y"], SectionPoint(x, y), p.get("order"),
                                 Fraction(p["height"]) if "height" in p else None,
                                 p.get("components")))
    fibers = []
    for j, f in enumerate(_need(raw, "fibers", where)):
        try:
            place = parse_place(f["place"], pid)
            parse_kodaira(f["type"])
        except (ExprError, ValueError) as exc:
            raise CatalogError(f"{where}.fibers[{j}]: {exc}") from None
        fibers.append(ExpectedFiber(place, f["place"], f["type"]))
    return CatalogEntry(
        ordinal=_need(raw, "ordinal", where), id=pid, variables=_need(raw, "variables", where),
        equation=_need(raw, "equation", where), raw_a=_need(raw, "raw_a", where),
        scale=_poly(_need(raw, "scale", where), f"{where}.scale"), model=model, fibers=fibers,
        final_table=_need(raw, "final_table", where), rank=_need(raw, "rank", where),
        torsion=list(_need(raw, "torsion", where)), points=points,
        generators=list(raw.get("generators", [])),
        regulator=Fraction(raw["regulator"]) if "regulator" in raw else None,
        param_map=raw.get("param_map"), printed=raw.get("printed", {}), notes=raw.get("notes", []))


def load_catalog(path=None) -> list[CatalogEntry]:
    """Entries of the built-in catalog, or of the JSON file at ``path``."""
    try:
        doc = json.loads(_catalog_text(path))
    except (OSError, json.JSONDecodeError) as exc:
        raise CatalogError(f"cannot read catalog: {exc}") from None
    if doc.get("schema") != SCHEMA:
        raise CatalogError(f"unsupported schema {doc.get('schema')!r}")
    entries = [_entry(e, i + 1) for i, e in enumerate(_need(doc, "entries", "catalog"))]
    ords = [e.ordinal for e in entries]
    if path is None and sorted(ords) != list(range(1, 31)):
        raise CatalogError(f"catalog ordinals are {sorted(ords)}, expected 1..30")
    if len(set(e.id for e in entries)) != len(entries):
        raise CatalogError("duplicate entry ids")
    return entries


@lru_cache(maxsize=1)
def builtin_catalog() -> tuple[CatalogEntry, ...]:
    return tuple(load_catalog())


def get_entry(key) -> CatalogEntry:
    """Look up by ordinal (int or digit string) or by parameter id."""
    for e in builtin_catalog():
        if str(e.ordinal) == str(key) or e.id == key:
            return e
    raise KeyError(f"no catalog entry {key!r}")


# -- raw equation audit -------------------------------------------------------------

def raw_coefficients(e: CatalogEntry) -> list[RatFunc]:
    env = e.raw_env()
    return [RatFunc.coerce(evaluate(s, env, one=RatFunc(1))) for s in e.raw_a]


def check_normalization(e: CatalogEntry) -> list[str]:
    """Raw equation -> raw a_i -> normalized model, each step re-derived."""
    problems = []
    raw = raw_coefficients(e)
    model, d = normalize_rational(raw)
    if model != e.model:
        problems.append("normalized model differs from the stored a-invariants")
    if d != e.scale:
        problems.append("scale factor differs from the stored one")
    lhs, rhs = split_equation(e.equation)
    # the printed equation and the raw Weierstrass form must agree as functions of (x, y, t)
    for i, (xv, yv, tv) in enumerate([(2, 3, 5), (Fraction(1, 3), -2, 7), (-5, Fraction(7, 2), Fraction(-2, 3)),
                                      (11, 13, Fraction(3, 7)), (Fraction(-4, 5), 9, 17)]):
        env = {e.variables[0]: Fraction(xv), e.variables[1]: Fraction(yv), e.id: Fraction(tv)}
        try:
            printed = evaluate(lhs, env) - evaluate(rhs, env)
        except ZeroDivisionError:
            continue
        a = [f(Fraction(tv)) for f in raw]
        x, y = Fraction(xv), Fraction(yv)
        weier = y * y + a[0] * x * y + a[2] * y - (x ** 3 + a[1] * x * x + a[3] * x + a[4])
        if printed != weier:
            problems.append(f"printed equation and raw a-invariants disagree at sample {i}")
            break
    for p in e.points:
        env = e.raw_env()
        env[e.variables[0]] = evaluate(p.x_raw, e.raw_env(), one=RatFunc(1))
        env[e.variables[1]] = evaluate(p.y_raw, e.raw_env(), one=RatFunc(1))
        if RatFunc.coerce(evaluate(lhs, env, one=RatFunc(1)) - evaluate(rhs, env, one=RatFunc(1))) != 0:
            problems.append(f"point {p.label} does not satisfy the printed equation")
        x = RatFunc.coerce(env[e.variables[0]]) * RatFunc(e.scale ** 2)
        y = RatFunc.coerce(env[e.variables[1]]) * RatFunc(e.scale ** 3)
        if (x, y) != (p.point.x, p.point.y):
            problems.append(f"point {p.label}: stored normalized coordinates do not match")
    return problems


# -- fibers -------------------------------------------------------------------------

def fiber_multiset(items) -> Counter:
    """Kodaira names counted with place degree."""
    c = Counter()
    for place, name in items:
        c[name] += place.degree
    return c


def parse_fiber_list(text: str) -> Counter:
    """'2I8,I4,I2,2I1' -> Counter({'I8': 2, ...})."""
    c = Counter()
    for part in text.split(","):
        part = part.strip()
        k = 0
        while k < len(part) and part[k].isdigit():
            k += 1
        n = int(part[:k]) if k else 1
        c[part[k:]] += n
    return c


def multiset_str(c: Counter) -> str:
    def key(name):
        sym, n = parse_kodaira(name)
        return (euler_number(sym, n), name)

    return ",".join(f"{c[k]}{k}" if c[k] > 1 else k for k in sorted(c, key=key, reverse=True) if c[k])


def reducible_types(fibers) -> tuple[str, ...]:
    out = []
    for f in fibers:
        if f.root_type:
            out += [f.root_type] * f.place.degree
    return canonical_fibers(out)


# -- Table 1 matching ---------------------------------------------------------------------

def match_table1(fibers, rank: int, torsion, records=None) -> dict:
    """Unique record with these reducible fibers, rank and torsion."""
    records = table1_records() if records is None else records
    key = canonical_fibers(fibers)
    hits = [i for i, r in enumerate(records)
            if r.fiber_multiset() == key and r.mw_rank == rank and list(r.torsion) == list(torsion)]
    if len(hits) == 1:
        return {"ok": True, "index": hits[0], "record": records[hits[0]]}
    return {"ok": False, "index": None, "candidates": hits,
            "reason": "no matching record" if not hits else "ambiguous match"}


# -- torsion ------------------------------------------------------------------------

def generated_group(surface: Surface, gens: list[SectionPoint], bound: int = 12) -> list[int]:
    """Invariant factors of the finite group generated by torsion sections."""
    m = surface.model
    elems = {_key(SectionPoint.zero()): SectionPoint.zero()}
    frontier = list(elems.values())
    while frontier:
        new = []
        for p in frontier:
            for g in gens:
                q = add(m, p, g)
                k = _key(q)
                if k not in elems:
                    elems[k] = q
                    new.append(q)
        frontier = new
        if len(elems) > bound * bound:
            raise ArithmeticError("generated group is too large to be torsion")
    n = len(elems)
    exponent = 1
    for p in elems.values():
        o = surface.torsion_order(p, bound)
        exponent = exponent * o // _gcd(exponent, o)
    return [f for f in (n // exponent, exponent) if f > 1]


def _key(p: SectionPoint):
    return None if p.is_zero else (p.x, p.y)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


# -- parametrization spot check -------------------------------------------------------

def surface_value(X, Y, Z) -> Fraction:
    return X + 1 / X + Y + 1 / Y + Z + 1 / Z


def spot_check_parametrization(e: CatalogEntry, samples=None) -> dict:
    """Push exact rational points through the printed maps and test the surface equation."""
    if not e.param_map:
        return {"status": "skipped", "reason": "no parametrization map"}
    samples = SAMPLE_VALUES if samples is None else samples
    assign = e.param_map["assign"]
    checked, skipped = [], []
    for p in e.points:
        for tv in samples:
            env = {e.id: tv}
            try:
                env[e.variables[0]] = evaluate(p.x_raw, env)
                env[e.variables[1]] = evaluate(p.y_raw, env)
                for name, text in assign:
                    env[name] = evaluate(text, env)
                value = surface_value(env["X"], env["Y"], env["Z"])
            except ZeroDivisionError:
                skipped.append({"point": p.label, e.id: str(tv)})
                continue
            checked.append({"point": p.label, e.id: _fs(tv), "X": _fs(env["X"]), "Y": _fs(env["Y"]),
                            "Z": _fs(env["Z"]), "value": _fs(value), "holds": value == 2})
            break
    if not checked:
        return {"status": "skipped", "reason": "no sample avoids the bad places", "skipped": skipped}
    holds = all(c["holds"] for c in checked)
    return {"status": "holds" if holds else "violated", "samples": checked}


def _fs(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# -- verification ---------------------------------------------------------------------

def _finding(check: str, status: str, **detail) -> dict:
    return {"check": check, "status": status, **detail}


def verify_entry(e: CatalogEntry, records=None) -> dict:
    """All checks for one entry; each returns pass, fail or discrepancy.

    ``discrepancy`` marks a printed value that disagrees with the computed
    truth in a way recorded in the entry itself (it is reported, not counted
    as a failure).
    """
    out = []
    surface = Surface(e.model)
    problems = check_normalization(e)
    out.append(_finding("normalization", "fail" if problems else "pass", problems=problems))
    if not e.model.check_identities():
        out.append(_finding("invariants", "fail", problems=["b/c identities fail"]))

    try:
        fibers = surface.fibers
    except ModelError as exc:
        out.append(_finding("fibers", "fail", error=str(exc)))
        return _summary(e, out, None, None)
    computed = [(f.place, f.name) for f in fibers]
    comp_ms = fiber_multiset(computed)
    euler = sum(f.place.degree * f.euler for f in fibers)
    expect_ms = fiber_multiset([(f.place, f.kodaira) for f in e.fibers])
    table_ms = parse_fiber_list(e.final_table["fibers"])
    positions = {
        "computed": [{"place": f.place.label(e.id), "type": f.name} for f in fibers],
        "expected": [{"place": f.label, "type": f.kodaira} for f in e.fibers],
        "same_places": sorted((f.place.sort_key(), f.name) for f in fibers)
        == sorted((f.place.sort_key(), f.kodaira) for f in e.fibers if f.kodaira != "I0"),
    }
    out.append(_finding("fibers", "pass" if comp_ms == expect_ms and euler == 24 else "fail",
                        computed=multiset_str(comp_ms), expected=multiset_str(expect_ms),
                        final_table=multiset_str(table_ms), euler=euler, positions=positions))
    if comp_ms != table_ms:
        # a final-table row that contradicts both Tate and the entry's own table is a misprint
        verdict = "discrepancy" if comp_ms == expect_ms and euler == 24 else "fail"
        out.append(_finding("final_table_fibers", verdict, computed=multiset_str(comp_ms),
                            final_table=multiset_str(table_ms),
                            final_table_euler=sum(euler_number(*parse_kodaira(k)) * n
                                                  for k, n in table_ms.items())))
    if comp_ms == expect_ms and not positions["same_places"]:
        out.append(_finding("fiber_positions", "discrepancy", **positions))

    roots = reducible_types(fibers)
    table_roots = canonical_fibers(e.final_table["reducible"])
    out.append(_finding("root_types", "pass" if roots == table_roots else "fail",
                        computed=list(roots), final_table=list(table_roots)))
    triv_rank = sum(int(r[1:]) for r in roots)
    out.append(_finding("shioda_tate", "pass" if triv_rank + e.rank == 18 else "fail",
                        trivial_rank=triv_rank, mw_rank=e.rank))

    # points
    for p in e.points:
        P = p.point
        if not on_curve(e.model, P):
            out.append(_finding("point", "fail", point=p.label, error="not on the curve"))
            continue
        order = surface.torsion_order(P)
        h = surface.height(P)
        rec = {"point": p.label, "order": "inf" if isinstance(order, NonTorsion) else int(order),
               "height": _fs(h)}
        ok = True
        if p.order is not None:
            ok &= (not isinstance(order, NonTorsion)) and int(order) == p.order
            rec["expected_order"] = p.order
        if p.height is not None:
            ok &= h == p.height and isinstance(order, NonTorsion)
            rec["expected_height"] = _fs(p.height)
        if p.components:
            got = {}
            for lab in p.components:
                got[lab] = surface.component_index(parse_place(lab, e.id), P)
            rec["components"] = got
            ok &= got == p.components
        if isinstance(order, NonTorsion) == (h == 0):
            ok = False
            rec["error"] = "height zero must coincide with finite order"
        out.append(_finding("point", "pass" if ok else "fail", **rec))

    # torsion group
    tors_pts = [p.point for p in e.points if p.order]
    group = generated_group(surface, tors_pts) if tors_pts else []
    tors_ok = group == list(e.torsion)
    tf = _finding("torsion", "pass" if tors_ok else "fail", generated=group, expected=e.torsion,
                  final_table=e.final_table["torsion"])
    out.append(tf)
    if e.final_table["torsion"] != e.torsion:
        out.append(_finding("final_table_torsion", "discrepancy", final_table=e.final_table["torsion"],
                            computed=group))
    if e.final_table["rank"] != e.rank:
        out.append(_finding("final_table_rank", "fail", final_table=e.final_table["rank"], expected=e.rank))

    # regulator and the determinant identity
    gens = [e.point(g).point for g in e.generators]
    if len(gens) != e.rank:
        out.append(_finding("generators", "fail", error=f"{len(gens)} generators for rank {e.rank}"))
    else:
        reg = surface.regulator(gens) if gens else Fraction(1)
        hm = surface.height_matrix(gens) if gens else []
        det_t = surface.trivial_lattice_det()
        tors_order = 1
        for g in group:
            tors_order *= g
        identity = Fraction(det_t) * reg / tors_order ** 2
        if e.regulator is not None:
            out.append(_finding("regulator", "pass" if reg == e.regulator else "fail",
                                computed=_fs(reg), expected=_fs(e.regulator),
                                matrix=[[_fs(v) for v in row] for row in hm]))
            if "regulator" in e.printed and Fraction(e.printed["regulator"]) != reg:
                out.append(_finding("printed_regulator", "discrepancy", printed=e.printed["regulator"],
                                    computed=_fs(reg)))
        out.append(_finding("determinant_identity", "pass" if identity == NS_DISC else "fail",
                            det_trivial=det_t, regulator=_fs(reg), torsion_order=tors_order,
                            value=_fs(identity)))

    # lattice side
    m = match_table1(roots, e.rank, group, records)
    rec = m.get("record")
    out.append(_finding("table1", "pass" if m["ok"] else "fail",
                        row=None if m["index"] is None else m["index"] + 1, host=rec.host if rec else None,
                        embedding=rec.embedding if rec else None,
                        **({} if m["ok"] else {"reason": m["reason"], "candidates": m["candidates"]})))

    sc = spot_check_parametrization(e)
    status = e.param_map.get("status", "printed") if e.param_map else None
    outcome = sc.pop("status")
    if outcome == "violated" and status == "printed_inconsistent":
        verdict = "discrepancy"
    elif outcome == "violated" or (outcome == "holds" and status == "printed_inconsistent"):
        verdict = "fail"
    else:
        verdict = "pass" if outcome == "holds" else "skipped"
    out.append(_finding("parametrization", verdict, outcome=outcome, **sc))
    return _summary(e, out, m["index"], rec)


def _summary(e: CatalogEntry, findings, row, rec) -> dict:
    failures = [f["check"] for f in findings if f["status"] == "fail"]
    return {"ordinal": e.ordinal, "id": e.id, "equation": e.equation,
            "table1_row": None if row is None else row + 1, "host": rec.host if rec else None,
            "ok": not failures, "failures": failures, "findings": findings}


def verify_all(entries=None, jobs: int = 1) -> dict:
    entries = list(builtin_catalog()) if entries is None else entries
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_verify_by_ordinal, [e.ordinal for e in entries]))
    else:
        results = [verify_entry(e) for e in entries]
    rows = [r["table1_row"] for r in results if r["table1_row"] is not None]
    dup = sorted(k for k, v in Counter(rows).items() if v > 1)
    missing = sorted(set(range(1, len(table1_records()) + 1)) - set(rows)) if len(entries) == 30 else []
    bijection = len(entries) == 30 and not dup and not missing
    failures = sum(1 for r in results if not r["ok"]) + (0 if bijection or len(entries) != 30 else 1)
    discrepancies = [{"id": r["id"], "check": f["check"]} for r in results
                     for f in r["findings"] if f["status"] == "discrepancy"]
    return {"schema": "k3fib-report/1", "entries": results,
            "bijection": {"ok": bijection, "duplicates": dup, "missing": missing},
            "summary": {"entries": len(results), "failed": failures,
                        "passed": sum(1 for r in results if r["ok"]),
                        "discrepancies": discrepancies}}


def _verify_by_ordinal(ordinal: int) -> dict:
    return verify_entry(get_entry(ordinal))
