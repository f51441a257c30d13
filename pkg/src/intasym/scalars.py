"""Scalars as they arrive from users and the example registry.

Rational inputs stay :class:`~fractions.Fraction`. Anything else that can be
written as a closed-form expression (``"sqrt(2/pi)"``, ``"1/sqrt(2)"``) becomes
a :class:`Constant`, which remembers its expression and evaluates at whatever
precision a caller asks for.
"""
from __future__ import annotations

import ast
import operator
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .bigfloat import to_mpf

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}
_FUNCS = ("sqrt", "exp", "log", "erfc", "gamma")
_NAMES = ("pi", "e")
_MAX_EXPONENT = 4096


class ScalarSyntaxError(ValueError):
    pass


def _check(node):
    if isinstance(node, ast.Expression):
        return _check(node.body)
    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool) or not isinstance(node.value, (int, float)):
            raise ScalarSyntaxError(f"unsupported literal {node.value!r}")
        return
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        return _check(node.operand)
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        _check(node.left)
        _check(node.right)
        return
    if isinstance(node, ast.Name) and node.id in _NAMES:
        return
    if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
            and node.func.id in _FUNCS and len(node.args) == 1 and not node.keywords):
        return _check(node.args[0])
    raise ScalarSyntaxError(f"unsupported expression element: {ast.dump(node)[:60]}")


def _eval_exact(node):
    """Fraction value of a purely rational expression, else None."""
    if isinstance(node, ast.Expression):
        return _eval_exact(node.body)
    if isinstance(node, ast.Constant):
        return Fraction(repr(node.value))
    if isinstance(node, ast.UnaryOp):
        v = _eval_exact(node.operand)
        return None if v is None else (-v if isinstance(node.op, ast.USub) else v)
    if isinstance(node, ast.BinOp):
        a, b = _eval_exact(node.left), _eval_exact(node.right)
        if a is None or b is None:
            return None
        if isinstance(node.op, ast.Pow):
            if b.denominator != 1:
                return None
            if abs(b) > _MAX_EXPONENT:
                raise ScalarSyntaxError(f"exponent {b} too large")
            return a ** int(b)
        return _BINOPS[type(node.op)](a, b)
    return None


def _eval_ctx(node, ctx):
    if isinstance(node, ast.Expression):
        return _eval_ctx(node.body, ctx)
    if isinstance(node, ast.Constant):
        return to_mpf(Fraction(repr(node.value)), ctx)
    if isinstance(node, ast.UnaryOp):
        v = _eval_ctx(node.operand, ctx)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        a, b = _eval_ctx(node.left, ctx), _eval_ctx(node.right, ctx)
        return _BINOPS[type(node.op)](a, b)
    if isinstance(node, ast.Name):
        return ctx.pi if node.id == "pi" else ctx.e
    return getattr(ctx, node.func.id)(_eval_ctx(node.args[0], ctx))


@dataclass(frozen=True)
class Constant:
    """A real constant known by its closed-form expression."""

    expr: str

    def __post_init__(self):
        _check(ast.parse(self.expr, mode="eval"))

    def evaluate(self, ctx):
        return _eval_ctx(ast.parse(self.expr, mode="eval"), ctx)

    def __str__(self):
        return self.expr


def parse_scalar(value):
    """Turn a JSON number / string into a Fraction when rational, else a Constant.

    Bare floats are read as the exact binary value they denote.
    """
    if isinstance(value, bool):
        raise ScalarSyntaxError("booleans are not scalars")
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    if isinstance(value, Constant):
        return value
    if not isinstance(value, str):
        raise ScalarSyntaxError(f"cannot read a scalar from {value!r}")
    text = value.strip().replace("^", "**")
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError as exc:
        raise ScalarSyntaxError(f"cannot parse scalar {value!r}") from exc
    _check(tree)
    try:
        exact = _eval_exact(tree)
    except ZeroDivisionError as exc:
        raise ScalarSyntaxError(f"division by zero in {value!r}") from exc
    return exact if exact is not None else Constant(text)

