"""Evaluate small arithmetic expressions over exact values.

Only numbers, names, parentheses and + - * / ^ ** are accepted; anything
else in the syntax tree is rejected.  Names are looked up in a caller
supplied environment, so the same text can be evaluated at rationals or as
elements of Q(t).
"""
from __future__ import annotations

import ast
import operator
from fractions import Fraction

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}


class ExprError(ValueError):
    pass


def parse(text: str) -> ast.Expression:
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ExprError(f"cannot parse {text!r}: {exc.msg}") from None
    return tree


def names(text: str) -> set[str]:
    return {n.id for n in ast.walk(parse(text)) if isinstance(n, ast.Name)}


def evaluate(text: str, env: dict, one=Fraction(1)):
    """Value of ``text`` with names bound by ``env``.

    Integer literals are lifted through ``one`` so that, for instance,
    ``one = RatFunc(1)`` makes every constant a rational function.
    """
    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return one * Fraction(node.value)
        if isinstance(node, ast.Name):
            if node.id not in env:
                raise ExprError(f"unknown name {node.id!r} in {text!r}")
            return env[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            if isinstance(node.op, ast.Pow):
                return ev(node.left) ** _int_literal(node.right, text)
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        raise ExprError(f"unsupported syntax {type(node).__name__} in {text!r}")

    return ev(parse(text))


def _int_literal(node, text: str) -> int:
    sign = 1
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        sign, node = -1, node.operand
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return sign * node.value
    raise ExprError(f"exponent must be an integer literal in {text!r}")


def split_equation(text: str) -> tuple[str, str]:
    if text.count("=") != 1:
        raise ExprError(f"equation needs exactly one '=': {text!r}")
    lhs, rhs = text.split("=")
    return lhs.strip(), rhs.strip()
