"""Safe closed-form expression compiler for config-defined methods and sources.

Grammar: the variables handed in at compile time ({m, n}, {n, r}, {r, t}, or
{k}), numeric literals (including imaginary ones like 1j), the operators
+ - * / ** with unary minus, parentheses, and the functions log, exp, abs,
pow, indicator.  Comparisons (<, <=, >, >=, ==) are allowed only as the
argument of indicator(...), which evaluates to 1.0 where the comparison
holds and 0.0 elsewhere.

Evaluation is numpy-vectorized: any variable may be an array and the result
broadcasts accordingly.  Nothing else from Python is reachable.
"""

from __future__ import annotations

import ast
from typing import Callable

import numpy as np


class ExpressionError(ValueError):
    pass


def _indicator(cond):
    return np.where(cond, 1.0, 0.0)


_FUNCTIONS = {
    "log": np.log,
    "exp": np.exp,
    "abs": np.abs,
    "pow": np.power,
    "indicator": _indicator,
}

_BINOPS = {
    ast.Add: np.add,
    ast.Sub: np.subtract,
    ast.Mult: np.multiply,
    ast.Div: np.true_divide,
    ast.Pow: np.power,
}

_CMPOPS = {
    ast.Lt: np.less,
    ast.LtE: np.less_equal,
    ast.Gt: np.greater,
    ast.GtE: np.greater_equal,
    ast.Eq: np.equal,
}


def compile_expression(source: str, variables: tuple) -> Callable:
    """Compile to a function of keyword arguments named like ``variables``."""
    try:
        tree = ast.parse(source, mode="eval")
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse expression {source!r}: {exc}") from exc

    def build(node, allow_compare=False):
        if isinstance(node, ast.Expression):
            return build(node.body)
        if isinstance(node, ast.Constant):
            if isinstance(node.value, (int, float, complex)):
                value = node.value
                return lambda env: value
            raise ExpressionError(f"literal {node.value!r} not allowed")
        if isinstance(node, ast.Name):
            if node.id not in variables:
                raise ExpressionError(
                    f"unknown name {node.id!r}; allowed variables: {variables}")
            name = node.id
            return lambda env: env[name]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            inner = build(node.operand)
            if isinstance(node.op, ast.USub):
                return lambda env: np.negative(inner(env))
            return inner
        if isinstance(node, ast.BinOp):
            op = _BINOPS.get(type(node.op))
            if op is None:
                raise ExpressionError(f"operator {type(node.op).__name__} not allowed")
            left, right = build(node.left), build(node.right)
            return lambda env: op(left(env), right(env))
        if isinstance(node, ast.Compare):
            if not allow_compare:
                raise ExpressionError("comparisons are allowed only inside indicator(...)")
            if len(node.ops) != 1 or len(node.comparators) != 1:
                raise ExpressionError("chained comparisons not allowed")
            op = _CMPOPS.get(type(node.ops[0]))
            if op is None:
                raise ExpressionError(f"comparison {type(node.ops[0]).__name__} not allowed")
            left, right = build(node.left), build(node.comparators[0])
            return lambda env: op(left(env), right(env))
        if isinstance(node, ast.Call):
            if not isinstance(node.func, ast.Name) or node.func.id not in _FUNCTIONS:
                raise ExpressionError("only log, exp, abs, pow, indicator may be called")
            if node.keywords:
                raise ExpressionError("keyword arguments not allowed")
            fn = _FUNCTIONS[node.func.id]
            expected = 2 if node.func.id == "pow" else 1
            if len(node.args) != expected:
                raise ExpressionError(f"{node.func.id} takes {expected} argument(s)")
            args = [build(a, allow_compare=(node.func.id == "indicator")) for a in node.args]
            return lambda env: fn(*(a(env) for a in args))
        raise ExpressionError(f"syntax {type(node).__name__} not allowed")

    evaluator = build(tree)

    def call(**kwargs):
        missing = set(variables) - set(kwargs)
        if missing:
            raise ExpressionError(f"missing variables {sorted(missing)}")
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            return evaluator(kwargs)

    return call
