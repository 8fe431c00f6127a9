"""Build src/k3fib/data/catalog.json from the source table below.

Equations, fiber tables, points and maps are written exactly as printed
(ASCII spelling, Greek parameters spelled out).  sympy extracts the
a-invariants from each equation; k3fib normalizes them to polynomial form
and rescales the points.  Run from the repository root:

    python3 tools/make_catalog.py
"""
from __future__ import annotations

import json
from fractions import Fraction
import sys
from pathlib import Path

import sympy as sp

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from k3fib.poly import Poly, RatFunc  # noqa: E402
from k3fib.weierstrass import normalize_rational  # noqa: E402

OUT = ROOT / "src" / "k3fib" / "data" / "catalog.json"

XY = ["x", "y"]
UV = ["U", "V"]

# (ordinal, id, parameter, variables, equation, fiber table [(place, type)],
#  final-table row (fibers, reducible, rank, torsion), text rank, text torsion,
#  points, generators, regulator, extras)
SOURCE = [
    dict(ordinal=1, id="s", variables=UV,
         equation="V^2 + (s + 1/s - 2)*U*V = U*(U - 1)^2",
         fibers=[("0", "I8"), ("inf", "I8"), ("1", "I4"), ("-1", "I2"), ("s^2 - 6*s + 1", "I1")],
         table=("2I8,I4,I2,2I1", "A1,A3,A7,A7", 0, [8]),
         rank=0, torsion=[8],
         points=[dict(label="A", x="s", y="s - 1", order=8,
                      components={"0": 3, "inf": 1, "1": 1, "-1": 1}),
                 dict(label="Q", x="1", y="0", order=4)],
         param_map=[("X", "-U*(U - 1)/V"), ("Y", "V/(U - 1)"), ("Z", "s")]),
    dict(ordinal=2, id="k", variables=XY,
         equation="y^2 - x*(k^2 - 2*k + 2)*y = x*(x - 1)*(x - k^2)",
         fibers=[("0", "I1*"), ("inf", "I12"), ("2", "I2"), ("4", "I1"), ("k^2 + 4", "I1")],
         table=("I1*,I12,I2,3I1", "A11,A1,D5", 1, [4]),
         rank=1, torsion=[4],
         points=[dict(label="P", x="1", y="0", height="4/3"),
                 dict(label="T2", x="0", y="0", order=2),
                 dict(label="T4", x="k", y="k", order=4)],
         generators=["P"],
         param_map=[("Z", "y/(k*(x - 1))"), ("Y", "-y*k/(-y + x^2 - x)"), ("X", "k - Y")],
         param_map_status="printed_inconsistent",
         notes=["The printed maps and their printed inverse agree with each other but do not "
                "carry the curve onto the surface with k = X + Y; the spot check is expected to "
                "report the violation."]),
    dict(ordinal=3, id="v", variables=XY,
         equation="y^2 + (v + 1)^2*y*x - v^2*(1 + 2*v)*y = (x - v)*(x - v^2)*(x - v^2 - v^3)",
         fibers=[("0", "I8"), ("inf", "I10"), ("v^6 - 5*v^4 + 39*v^2 + 2", "I1")],
         table=("I8,I10,6I1", "A7,A9", 2, []),
         rank=2, torsion=[],
         points=[dict(label="P1", x="0", y="v^3"), dict(label="P2", x="v", y="0")],
         generators=["P1", "P2"], regulator="1/10"),
    dict(ordinal=4, id="a", variables=XY,
         equation="y^2 - (x - 1)*y/((1 + a)*a) = x*(x - 1/(1 + a))^2",
         fibers=[("0", "I8"), ("inf", "I1*"), ("-1", "I6"), ("16*a^3 + 11*a^2 - 2*a + 1", "I1")],
         table=("I8,I1*,I6,3I1", "D5,A5,A7", 1, []),
         rank=1, torsion=[],
         points=[dict(label="P", x="1/(1 + a)", y="0", height="1/24")],
         generators=["P"],
         param_map=[("Y", "-y*(1 + a)/(x + x*a - 1)"), ("X", "x*(x + x*a - 1)/(y*(1 + a))"),
                    ("Z", "1 + a*(X + Y)")]),
    dict(ordinal=5, id="d", variables=XY,
         equation="y^2 - 2*d*y*x = x*(x - d^2)*(x - d*(d + 1)^2)",
         fibers=[("0", "I2*"), ("inf", "I2*"), ("1", "I2"), ("-1", "I0*")],
         table=("2I2*,I2,I0*", "A1,D4,D6,D6", 1, [2, 2]),
         rank=1, torsion=[2, 2],
         points=[dict(label="P", x="d^2", y="0", height="1"),
                 dict(label="T1", x="0", y="0", order=2),
                 dict(label="T2", x="d + d^2", y="d*(d + d^2)", order=2),
                 dict(label="T3", x="d^3 + d^2", y="d*(d^3 + d^2)", order=2)],
         generators=["P"],
         param_map=[("Y", "-y/((d + 1)*(d^2 - x))"), ("Z", "-x/(Y*d*(d + 1))"), ("X", "d/Y")],
         notes=["The map is the printed inverse solved for X, Y, Z.",
                "Only the x-coordinates of the two-torsion points are printed; y = d x follows "
                "from 2y + a1 x + a3 = 0."]),
    dict(ordinal=6, id="p", variables=XY,
         equation="y^2 = x*(x - p)*(x - p*(p + 1)^2)",
         fibers=[("0", "I2*"), ("inf", "I4*"), ("-2", "I2"), ("-1", "I4")],
         table=("I2*,I4*,I2,I4", "A1,D6,A3,D8", 0, [2, 2]),
         rank=0, torsion=[2, 2],
         points=[dict(label="T1", x="0", y="0", order=2),
                 dict(label="T2", x="p", y="0", order=2),
                 dict(label="T3", x="p*(p + 1)^2", y="0", order=2)],
         param_map=[("s", "x*p*(p + 1)/(y + x*p)"), ("U", "x/(p*(p + 1))"), ("V", "p*U/s"),
                    ("X", "-U*(U - 1)/V"), ("Y", "V/(U - 1)"), ("Z", "s")],
         notes=["The map goes through the (U, V, s) model; V = p U / s is the definition of p."]),
    dict(ordinal=7, id="w", variables=XY,
         equation="y^2 + w^2*(x + 1)*y = x*(x + 1)*(x + w^2)",
         fibers=[("0", "I6"), ("inf", "I12"), ("1", "I2"), ("-1", "I2"), ("w^2 + 8", "I1")],
         table=("I6,I12,2I2,2I1", "A5,A1,A1,A11", 0, [6]),
         rank=0, torsion=[6],
         points=[dict(label="T", x="-w^2", y="0", order=6)],
         param_map=[("X", "-y/((w - 1)*x)"), ("Y", "(-x/(1 - X + w*X) - 1)/(w - 1)"),
                    ("Z", "w + 1 - X - Y")],
         notes=["The map is the printed inverse solved for X, Y, Z."]),
    dict(ordinal=8, id="b", variables=XY,
         equation="y^2 + 2*(b + 1)*x*y + b^2*(b + 1)^2*y = x*(x + b^2)*(x - (b + 1)^2)",
         fibers=[("0", "IV*"), ("inf", "IV*"), ("-1", "I6"), ("27*b^2 + 46*b + 27", "I1")],
         table=("2IV*,I6,2I1", "A5,E6,E6", 1, [3]),
         rank=1, torsion=[3],
         points=[dict(label="P", x="-b^2", y="0", height="4/3"),
                 dict(label="T", x="0", y="0", order=3)],
         generators=["P"],
         notes=["The three-torsion point is (0, 0), the flex of the z = x + y form."]),
    dict(ordinal=9, id="r", variables=XY,
         equation="y^2 + 2*(r - 1)*x*y = x*(x - 1)*(x - r^3)",
         fibers=[("0", "I2*"), ("inf", "I6*"), ("1", "I2"), ("r^2 + 4", "I1")],
         table=("I6*,I2*,I2,2I1", "D6,A1,D10", 1, []),
         rank=1, torsion=[2],
         points=[dict(label="P", x="1", y="0", height="1"),
                 dict(label="T", x="0", y="0", order=2)],
         generators=["P"],
         notes=["The final table prints torsion 0; the text and (0, 0) give order 2."]),
    dict(ordinal=10, id="e", variables=XY,
         equation="y^2 = x*(x^2 - e^2*(e - 1)*x + e^3*(2*e + 1))",
         fibers=[("0", "III*"), ("inf", "I4*"), ("-1", "I2"), ("-1/2", "I2"), ("4", "I1")],
         table=("III*,I4*,2I2,I1", "A1,A1,D8,E7", 1, [2]),
         rank=1, torsion=[2],
         points=[dict(label="P", x="e^3", y="e^3 + e^4", height="1"),
                 dict(label="T", x="0", y="0", order=2)],
         generators=["P"]),
    dict(ordinal=11, id="f", variables=UV,
         equation="V^2 - 2*f*V*U - 2*f^2*(f - 1)*V = U^3 + f^4*(f - 1)^3",
         fibers=[("0", "III*"), ("inf", "II*"), ("1", "I4"), ("32/27", "I1")],
         table=("III*,II*,I4,I1", "E7,A3,E8", 0, []),
         rank=0, torsion=[], points=[]),
    dict(ordinal=12, id="g", variables=XY,
         equation="y^2 = x^3 + 4*g^2*x^2 + g^3*(g + 1)^2*x",
         fibers=[("0", "III*"), ("inf", "III*"), ("-1", "I4"), ("1", "I2")],
         table=("2III*,I4,I2", "E7,E7,A1,A3", 0, [2]),
         rank=0, torsion=[2],
         points=[dict(label="T", x="0", y="0", order=2)]),
    dict(ordinal=13, id="h", variables=XY,
         equation="y^2 = x^3 - 25/3*x - h - 1/h - 196/27",
         fibers=[("0", "II*"), ("inf", "II*"), ("-1", "I2"), ("27*h^2 - 446*h + 27", "I1")],
         table=("2II*,I2,2I1", "A1,E8,E8", 1, []),
         rank=1, torsion=[],
         points=[dict(label="P", x="1/16*h^2 + 1/16*h^(-2) + h + h^(-1) + 29/24",
                      y="1/64*(h - 1)*(h + 1)*(h^4 + 24*h^3 + 126*h^2 + 24*h + 1)/h^3",
                      height="4")],
         generators=["P"],
         notes=["The printed equation has its I2 at h = 1 and its I1 pair at the roots of "
                "27h^2 + 446h + 27: the printed table with h replaced by -h."]),
    dict(ordinal=14, id="t", variables=XY,
         equation="y^2 = x^3 + t*(t^2 + 1 + 4*t)*x^2 + t^4*x",
         fibers=[("0", "I4*"), ("inf", "I4*"), ("-1", "I2"), ("t^2 + 6*t + 1", "I1")],
         table=("2I4*,I2,2I1", "A1,D8,D8", 1, [2]),
         rank=1, torsion=[2],
         points=[dict(label="P", x="-t^3", y="2*t^4", height="1"),
                 dict(label="T", x="0", y="0", order=2)],
         generators=["P"]),
    dict(ordinal=15, id="l", variables=XY,
         equation="y^2 - y*x - 2*l^3*y = (x + l^3)*(x + l^2)*(x - l + l^3)",
         fibers=[("0", "I10"), ("inf", "I3*"), ("16*l^5 - 32*l^4 - 24*l^3 - 23*l^2 + 12*l - 2", "I1")],
         table=("I10,I3*,5I1", "A9,D7", 2, []),
         rank=2, torsion=[],
         points=[dict(label="P1", x="-l^3", y="0"), dict(label="P2", x="-l^2", y="0")],
         generators=["P1", "P2"], regulator="1/5"),
    dict(ordinal=16, id="o", variables=XY,
         equation="y^2 = x^3 + (o^3 - 5*o^2 + 2)*x^2 + x",
         fibers=[("0", "I2"), ("inf", "I12*"), ("1", "I1"), ("5", "I1"), ("o^2 - 4*o - 4", "I1")],
         table=("I12*,I2,4I1", "A1,D16", 1, [2]),
         rank=1, torsion=[2],
         points=[dict(label="P", x="1/16*(o - 4)^2*(o - 2)^2",
                      y="1/64*(o - 4)*(o - 2)*(o^4 - 4*o^3 - 20*o^2 + 96*o - 80)", height="4"),
                 dict(label="T", x="0", y="0", order=2)],
         generators=["P"]),
    dict(ordinal=17, id="q", variables=XY,
         equation="y^2 = x^3 + (q^3 + q^2 + 2*q - 2)*x^2 + (1 - 2*q)*x",
         fibers=[("0", "I4"), ("inf", "I10*"), ("1/2", "I2"), ("q^2 + 2*q + 5", "I1")],
         table=("I10*,I4,I2,2I1", "A3,A1,D14", 0, [2]),
         rank=0, torsion=[2],
         points=[dict(label="T", x="0", y="0", order=2)]),
    dict(ordinal=18, id="m", variables=XY,
         equation="y^2 + (m - 2)*(m + 2)*y*x = x*(x - 1)^2",
         fibers=[("0", "I2"), ("inf", "I16"), ("2", "I2"), ("-2", "I2"), ("m^2 - 8", "I1")],
         table=("I16,3I2,2I1", "A1,A1,A1,A15", 0, [4]),
         rank=0, torsion=[4],
         points=[dict(label="T", x="1", y="0", order=4)]),
    dict(ordinal=19, id="n", variables=XY,
         equation="y^2 + (n^2 - 1)*y*x - y = x^3 - 2*x^2",
         fibers=[("0", "I2"), ("inf", "I16"), ("2*n^6 - 9*n^4 - 17*n^2 + 125", "I1")],
         table=("I16,I2,6I1", "A1,A15", 2, []),
         rank=2, torsion=[],
         points=[dict(label="P1", x="1 + n", y="1"),
                 dict(label="P2", x="1 - n", y="n^3 - n^2 - n + 1")],
         generators=["P1", "P2"], regulator="1/4",
         printed={"points": "(1 + n, 0), (1 - n, 0)", "regulator": "3/8"},
         notes=["The printed points (1 +- n, 0) are not on the curve; the sections with "
                "x = 1 +- n have the y-values stored here.",
                "No pair of sections can have regulator 3/8: with det T = 32 and trivial "
                "torsion every regulator is (index)^2/4."]),
    dict(ordinal=20, id="j", variables=XY,
         equation="y^2 - (j^2 + 4*j)*x*y + j^2*y = x^3",
         fibers=[("0", "IV*"), ("inf", "I12"), ("-1", "I2"), ("j^2 + 10*j + 27", "I1")],
         table=("IV*,I12,I2,2I1", "A11,E6,A1", 0, [3]),
         rank=0, torsion=[3],
         points=[dict(label="T", x="0", y="0", order=3)]),
    dict(ordinal=21, id="c", variables=XY,
         equation="y^2 + (c^2 + 5)*y*x + y = x^3",
         fibers=[("inf", "I18"), ("c^2 + 2", "I1"), ("c^2 + c + 7", "I1"), ("c^2 - c + 7", "I1")],
         table=("I18,6I1", "A17", 1, [3]),
         rank=1, torsion=[3],
         points=[dict(label="P", x="-1/4*(c^4 + c^2 + 1)", y="1/8*(c^2 - c + 1)^3", height="4"),
                 dict(label="T", x="0", y="0", order=3)],
         generators=["P"]),
    dict(ordinal=22, id="u", variables=XY,
         equation="y^2 = x^3 + u*(u^2 + 4*u + 2)*x^2 + u^2*x",
         fibers=[("0", "I1*"), ("inf", "I8*"), ("-2", "I2"), ("-4", "I1")],
         table=("I8*,I1*,I2,I1", "A1,D5,D12", 0, [2]),
         rank=0, torsion=[2],
         points=[dict(label="T", x="0", y="0", order=2)]),
    dict(ordinal=23, id="i", variables=XY,
         equation="y^2 = x^3 + (i^3 + 4*i^2 + 2*i)*x^2 + (-2*i^2 - 8*i - 2)*x + i + 4",
         fibers=[("inf", "I13*"), ("-5/2", "I2"), ("4*i^3 + 11*i^2 - 8*i + 16", "I1")],
         table=("I13*,I2,3I1", "A1,D17", 0, []),
         rank=0, torsion=[], points=[]),
    dict(ordinal=24, id="psi", variables=XY,
         equation="y^2 = x^3 - 5*x^2*psi^2 - psi*x^2 - psi^5*x",
         fibers=[("inf", "I6*"), ("-5/2", "III*"), ("-1/4", "I1"), ("psi^2 + 6*psi + 1", "I1")],
         table=("III*,I6*,3I1", "E7,D10", 1, [2]),
         rank=1, torsion=[2],
         points=[dict(label="P", x="1/4*(psi^2 + 3*psi + 1)^2",
                      y="-1/8*(psi^2 + 3*psi + 1)*(psi^4 + 6*psi^3 + psi^2 - 4*psi - 1)",
                      height="4"),
                 dict(label="T", x="0", y="0", order=2)],
         generators=["P"],
         notes=["The printed table puts I6* at infinity and III* at -5/2; Tate's algorithm on the "
                "printed equation finds I6* at 0 and III* at infinity.  Both are reported."]),
    dict(ordinal=25, id="delta", variables=XY,
         equation="y^2 = x^3 + delta*(1 + 4*delta)*x^2 + 2*delta^4*x + delta^7",
         fibers=[("0", "I5*"), ("inf", "II*"), ("-2", "I2"), ("-4/27", "I1")],
         table=("I5*,II*,I2,2I1", "E8,A1,D9", 0, []),
         rank=0, torsion=[], points=[],
         notes=["The final table prints 2I1, which would make the Euler sum 25; the fibration's "
                "own table has a single I1 at -4/27."]),
    dict(ordinal=26, id="pi", variables=XY,
         equation="y^2 = x^3 + pi*(pi^2 - 2*pi - 2)*x^2 + pi^2*(2*pi + 1)*x",
         fibers=[("0", "I3*"), ("inf", "I6*"), ("-1/2", "I2"), ("4", "I1")],
         table=("I3*,I6*,I2,I1", "A1,D10,D7", 0, [2]),
         rank=0, torsion=[2],
         points=[dict(label="T", x="0", y="0", order=2)]),
    dict(ordinal=27, id="mu", variables=XY,
         equation="y^2 + mu^2*(x - 1)*y = x*(x - mu^2)^2",
         fibers=[("0", "IV*"), ("inf", "I10"), ("1", "I2"), ("-1", "I2"), ("2*mu^2 - 27", "I1")],
         table=("IV*,I10,2I2,2I1", "A9,A1,A1,E6", 1, []),
         rank=1, torsion=[],
         points=[dict(label="P", x="mu^2", y="0", height="1/15")],
         generators=["P"]),
    dict(ordinal=28, id="alpha", variables=XY,
         equation="y^2 + (alpha^2 + 2)*y*x - alpha^2*y = x^2*(x - 1)",
         fibers=[("0", "I0*"), ("inf", "I14"), ("2*alpha^4 + 13*alpha^2 + 64", "I1")],
         table=("I0*,I14,4I1", "D4,A13", 1, []),
         rank=1, torsion=[],
         points=[dict(label="P", x="0", y="0", height="1/7")],
         generators=["P"],
         notes=["x^2 (x - 1) expands to x^3 - x^2, so the printed form is already a cubic "
                "Weierstrass equation."]),
    dict(ordinal=29, id="beta", variables=XY,
         equation="y^2 = x^3 + 2*beta^2*(beta - 1)*x^2 + beta^3*(beta - 1)^2*x",
         fibers=[("0", "III*"), ("inf", "I2*"), ("1", "I1*")],
         table=("III*,I2*,I1*", "E7,D6,D5", 0, [2]),
         rank=0, torsion=[2],
         points=[dict(label="T", x="0", y="0", order=2)]),
    dict(ordinal=30, id="phi", variables=XY,
         equation="y^2 = x^3 + 2*phi^2*(4*phi - 7)*x^2 - 4*phi^3*(-3*phi + 8*phi^2 - 4)*x"
                  " + 8*(3 + 4*phi)*phi^6",
         fibers=[("0", "III*"), ("inf", "I7*"), ("8*phi^2 - 13*phi + 16", "I1")],
         table=("III*,I7*,2I1", "E7,D11", 0, []),
         rank=0, torsion=[], points=[]),
]


def to_ratfunc(expr, var) -> RatFunc:
    num, den = sp.fraction(sp.cancel(sp.together(expr)))

    def poly(e):
        coeffs = sp.Poly(e, var).all_coeffs()[::-1]
        return Poly([Fraction(int(sp.Rational(c).p), int(sp.Rational(c).q)) for c in coeffs])

    return RatFunc(poly(num), poly(den))


def a_invariants(equation: str, variables, param: str):
    x, y = sp.symbols(variables)
    t = sp.Symbol(param)
    loc = {variables[0]: x, variables[1]: y, param: t}
    lhs, rhs = equation.split("=")
    F = sp.expand(sp.sympify(lhs.replace("^", "**"), locals=loc) - sp.sympify(rhs.replace("^", "**"), locals=loc))
    P = sp.Poly(F, x, y, domain=sp.QQ.frac_field(t))
    coeff = {m: P.coeff_monomial(x ** m[0] * y ** m[1]) for m in P.monoms()}
    allowed = {(0, 2), (1, 1), (0, 1), (3, 0), (2, 0), (1, 0), (0, 0)}
    if set(coeff) - allowed or coeff.get((0, 2)) != 1 or coeff.get((3, 0)) != -1:
        raise SystemExit(f"{param}: not a Weierstrass equation: {equation}")
    get = lambda m: sp.sympify(coeff.get(m, 0))
    a = [get((1, 1)), -get((2, 0)), get((0, 1)), -get((1, 0)), -get((0, 0))]
    return [to_ratfunc(ai, t) for ai in a], t


def rat_str(f: RatFunc, var: str) -> str:
    return f.pretty(var) if f.is_poly() else f"({f.num.pretty(var)})/({f.den.pretty(var)})"


def build_entry(src: dict) -> dict:
    pid = src["id"]
    raw_a, t = a_invariants(src["equation"], src["variables"], pid)
    model, d = normalize_rational(raw_a)
    entry = {
        "ordinal": src["ordinal"],
        "id": pid,
        "parameter": pid,
        "variables": src["variables"],
        "equation": src["equation"],
        "raw_a": [rat_str(a, pid) for a in raw_a],
        "scale": d.to_list(),
        "a": [ai.to_list() for ai in model.a],
        "fibers": [{"place": p, "type": k} for p, k in src["fibers"]],
        "final_table": {"fibers": src["table"][0], "reducible": src["table"][1].split(","),
                        "rank": src["table"][2], "torsion": src["table"][3]},
        "rank": src["rank"],
        "torsion": src["torsion"],
        "points": [],
        "generators": src.get("generators", []),
    }
    loc = {pid: t}
    for pt in src["points"]:
        x = to_ratfunc(sp.sympify(pt["x"].replace("^", "**"), locals=loc), t)
        y = to_ratfunc(sp.sympify(pt["y"].replace("^", "**"), locals=loc), t)
        xn, yn = x * RatFunc(d * d), y * RatFunc(d ** 3)
        rec = {"label": pt["label"], "x": pt["x"], "y": pt["y"],
               "x_num": xn.num.to_list(), "x_den": xn.den.to_list(),
               "y_num": yn.num.to_list(), "y_den": yn.den.to_list()}
        for key in ("order", "height", "components"):
            if key in pt:
                rec[key] = pt[key]
        entry["points"].append(rec)
    if "regulator" in src:
        entry["regulator"] = src["regulator"]
    if "param_map" in src:
        entry["param_map"] = {"assign": [list(a) for a in src["param_map"]],
                              "status": src.get("param_map_status", "printed")}
    if "printed" in src:
        entry["printed"] = src["printed"]
    if "notes" in src:
        entry["notes"] = src["notes"]
    return entry


def main() -> None:
    doc = {"schema": "k3fib-catalog/1", "surface": "X + 1/X + Y + 1/Y + Z + 1/Z = 2",
           "entries": [build_entry(s) for s in SOURCE]}
    OUT.write_text(json.dumps(doc, indent=1, ensure_ascii=False) + "\n", encoding="utf-8")
    print(f"wrote {len(doc['entries'])} entries to {OUT.relative_to(ROOT)}")


if __name__ == "__main__":
    main()
