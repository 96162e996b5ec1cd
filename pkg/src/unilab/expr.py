"""Scalar expressions in one variable ``x``: AST, vectorised evaluation, printing, inversion.

The grammar lives in :mod:`unilab.speclang.parser`; this module only knows
about trees. Numeric literals are exact :class:`~fractions.Fraction` values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

FUNCTIONS = ("ln", "exp")


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str = "x"


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * / ^
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Func:
    name: str  # ln or exp
    arg: "Expr"


Expr = Union[Num, Var, Neg, BinOp, Func]


def num(v) -> Num:
    return Num(Fraction(v))


def contains_var(e: Expr) -> bool:
    if isinstance(e, Var):
        return True
    if isinstance(e, Num):
        return False
    if isinstance(e, (Neg, Func)):
        return contains_var(e.arg)
    return contains_var(e.left) or contains_var(e.right)


def count_var(e: Expr) -> int:
    if isinstance(e, Var):
        return 1
    if isinstance(e, Num):
        return 0
    if isinstance(e, (Neg, Func)):
        return count_var(e.arg)
    return count_var(e.left) + count_var(e.right)


# -- evaluation ---------------------------------------------------------------


def evaluate(e: Expr, x) -> np.ndarray:
    """Evaluate on an array. ln(0) is -inf and 1/0 is inf, as IEEE arithmetic gives."""
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        return np.asarray(_ev(e, np.asarray(x, dtype=float)), dtype=float)


def _ev(e: Expr, x: np.ndarray):
    if isinstance(e, Num):
        return float(e.value)
    if isinstance(e, Var):
        return x
    if isinstance(e, Neg):
        return -_ev(e.arg, x)
    if isinstance(e, Func):
        a = np.asarray(_ev(e.arg, x), dtype=float)
        return np.log(a) if e.name == "ln" else np.exp(a)
    a = np.asarray(_ev(e.left, x), dtype=float)
    b = np.asarray(_ev(e.right, x), dtype=float)
    if e.op == "+":
        return a + b
    if e.op == "-":
        return a - b
    if e.op == "*":
        # 0 * inf would be NaN; a zero factor wins here (e.g. x*ln(x) at 0)
        out = a * b
        return np.where((a == 0) | (b == 0), 0.0, out)
    if e.op == "/":
        return a / b
    return np.power(a, b)


def constant_value(e: Expr) -> Fraction | None:
    """Exact value of a variable-free expression built from + - * / and integer powers."""
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Neg):
        v = constant_value(e.arg)
        return None if v is None else -v
    if isinstance(e, BinOp):
        a, b = constant_value(e.left), constant_value(e.right)
        if a is None or b is None:
            return None
        if e.op == "+":
            return a + b
        if e.op == "-":
            return a - b
        if e.op == "*":
            return a * b
        if e.op == "/":
            return None if b == 0 else a / b
        if b.denominator == 1 and not (a == 0 and b < 0):
            return a ** int(b)
    return None


# -- printing -----------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}
_NEG_PREC = 3


def _prec(e: Expr) -> int:
    if isinstance(e, BinOp):
        return _PREC[e.op]
    if isinstance(e, Neg):
        return _NEG_PREC
    if isinstance(e, Num) and e.value.denominator != 1:
        return 2  # printed as p/q
    return 5


def _fmt_num(v: Fraction) -> str:
    if v.denominator == 1:
        return str(v.numerator)
    return f"{v.numerator}/{v.denominator}"


def format_expr(e: Expr) -> str:
    if isinstance(e, Num):
        return _fmt_num(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Func):
        return f"{e.name}({format_expr(e.arg)})"
    if isinstance(e, Neg):
        inner = format_expr(e.arg)
        return "-" + (f"({inner})" if _prec(e.arg) < _NEG_PREC else inner)
    p = _PREC[e.op]
    left = format_expr(e.left)
    right = format_expr(e.right)
    if e.op == "^":
        # right associative; a negated base needs parentheses
        if _prec(e.left) <= p:
            left = f"({left})"
        if _prec(e.right) < p:
            right = f"({right})"
    else:
        if _prec(e.left) < p:
            left = f"({left})"
        # left associative: equal precedence on the right needs parentheses
        if _prec(e.right) <= p and not (isinstance(e.right, Neg) and p < _NEG_PREC):
            right = f"({right})"
    return f"{left}{e.op}{right}"


# -- inversion ----------------------------------------------------------------


def _affine(e: Expr) -> tuple[Fraction, Fraction] | None:
    """Coefficients (slope, offset) if ``e`` is affine in x with exact constants."""
    if isinstance(e, Var):
        return Fraction(1), Fraction(0)
    c = constant_value(e)
    if c is not None:
        return Fraction(0), c
    if isinstance(e, Neg):
        inner = _affine(e.arg)
        return None if inner is None else (-inner[0], -inner[1])
    if isinstance(e, BinOp):
        if e.op in "+-":
            a, b = _affine(e.left), _affine(e.right)
            if a is None or b is None:
                return None
            s = 1 if e.op == "+" else -1
            return a[0] + s * b[0], a[1] + s * b[1]
        if e.op == "*":
            a, b = _affine(e.left), _affine(e.right)
            if a is None or b is None or (a[0] != 0 and b[0] != 0):
                return None
            return a[0] * b[1] + b[0] * a[1], a[1] * b[1]
        if e.op == "/":
            a, d = _affine(e.left), constant_value(e.right)
            if a is None or not d:
                return None
            return a[0] / d, a[1] / d
    return None


def _solve(e: Expr, y: Expr) -> Expr | None:
    """Rewrite e(x) = y as x = g(y); ``y`` is itself an expression in x."""
    if isinstance(e, Var):
        return y
    if isinstance(e, Num):
        return None
    if isinstance(e, Neg):
        return _solve(e.arg, Neg(y))
    if isinstance(e, Func):
        return _solve(e.arg, Func("exp" if e.name == "ln" else "ln", y))
    left_has, right_has = contains_var(e.left), contains_var(e.right)
    if left_has and right_has:
        if e.op == "/":
            p, q = _affine(e.left), _affine(e.right)
            if p is None or q is None:
                return None
            # (p1 x + p0)/(q1 x + q0) = y  =>  x = (p0 - q0 y)/(q1 y - p1)
            (p1, p0), (q1, q0) = p, q
            if p1 * q0 - p0 * q1 == 0:
                return None
            numer = BinOp("-", Num(p0), BinOp("*", Num(q0), y))
            denom = BinOp("-", BinOp("*", Num(q1), y), Num(p1))
            return BinOp("/", numer, denom)
        aff = _affine(e)
        if aff is None or aff[0] == 0:
            return None
        return BinOp("/", BinOp("-", y, Num(aff[1])), Num(aff[0]))
    if e.op == "+":
        if left_has:
            return _solve(e.left, BinOp("-", y, e.right))
        return _solve(e.right, BinOp("-", y, e.left))
    if e.op == "-":
        if left_has:
            return _solve(e.left, BinOp("+", y, e.right))
        return _solve(e.right, BinOp("-", e.left, y))
    if e.op == "*":
        if left_has:
            return _solve(e.left, BinOp("/", y, e.right))
        return _solve(e.right, BinOp("/", y, e.left))
    if e.op == "/":
        if left_has:
            return _solve(e.left, BinOp("*", y, e.right))
        return _solve(e.right, BinOp("/", e.left, y))
    # power
    if left_has:
        return _solve(e.left, BinOp("^", y, BinOp("/", Num(Fraction(1)), e.right)))
    return _solve(e.right, BinOp("/", Func("ln", y), Func("ln", e.left)))


def symbolic_inverse(e: Expr) -> Expr | None:
    """Closed-form inverse, or ``None`` when the rewriting rules do not apply.

    Handles expressions with a single occurrence of x and quotients of two
    affine expressions (the log-odds family). The result is only a candidate;
    callers check it numerically before trusting it.
    """
    if not contains_var(e):
        return None
    return _solve(e, Var())
