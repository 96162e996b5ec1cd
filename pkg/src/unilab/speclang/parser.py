"""Recursive-descent parser for operator specifications.

Every call takes a fixed parameter schema, so values are parsed with the
kind the parameter expects (operator, expression, number, interval, ...)
and errors can say exactly what was expected.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .. import expr as ex
from ..numerics import InfinityConvention
from ..operators import Builtin as BuiltinKind
from ..registry import Example as ExampleKind
from . import nodes as n
from .lexer import ParseError, Tok, Token, tokenize

MAX_DEPTH = 100  # each level costs several Python frames
BUILTINS = frozenset(b.value for b in BuiltinKind)
CONVENTIONS = {"conjunctive": InfinityConvention.SumIsMinusInfinity, "disjunctive": InfinityConvention.SumIsPlusInfinity}


@dataclass(frozen=True)
class Param:
    name: str
    kind: str  # node, expr, number, integer, interval, convention, example
    required: bool = True


SCHEMAS: dict[str, tuple[Param, ...]] = {
    "gen_tnorm": (Param("f", "expr"),),
    "gen_tconorm": (Param("f", "expr"),),
    "representable": (Param("f", "expr"), Param("convention", "convention")),
    "dual": (Param("op", "node"),),
    "rescale": (Param("op", "node"), Param("to", "interval")),
    "umin": (Param("T", "node"), Param("S", "node"), Param("e", "number")),
    "umax": (Param("T", "node"), Param("S", "node"), Param("e", "number")),
    "transform": (Param("op", "node"),) + tuple(Param(k, "number") for k in "abcdv"),
    "part": (Param("carrier", "interval", False), Param("op", "node", False), Param("rank", "integer")),
    "example": (Param("name", "example"),),
}
CALLS = frozenset(SCHEMAS) | {"ordinal"}


def _canon_key(text: str) -> str:
    low = text.lower()
    return {"t": "T", "s": "S"}.get(low, low)


class Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.depth = 0

    # -- token helpers -----------------------------------------------------------

    def peek(self, k: int = 0) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def advance(self) -> Token:
        t = self.peek()
        if t.kind is not Tok.EOF:
            self.i += 1
        return t

    def at(self, text: str, k: int = 0) -> bool:
        t = self.peek(k)
        return t.kind is Tok.PUNCT and t.text == text

    def error(self, expected: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(tok.line, tok.column, expected, tok.describe())

    def expect(self, text: str, expected: str | None = None) -> Token:
        if not self.at(text):
            raise self.error(expected or repr(text))
        return self.advance()

    def enter(self) -> None:
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise self.error(f"nesting depth at most {MAX_DEPTH}")

    def leave(self) -> None:
        self.depth -= 1

    # -- specs ---------------------------------------------------------------------

    def parse_spec(self) -> n.Node:
        node = self.parse_node()
        if self.peek().kind is not Tok.EOF:
            raise self.error("end of input")
        return node

    def parse_node(self) -> n.Node:
        tok = self.peek()
        if tok.kind is not Tok.IDENT:
            raise self.error("operator")
        name = tok.text.lower()
        self.enter()
        try:
            if self.at("(", 1):
                if name not in CALLS:
                    raise self.error("operator", tok)
                self.advance()
                return self._call(name, tok)
            if name in BUILTINS:
                self.advance()
                return n.Builtin(name)
            raise self.error("operator", tok)
        finally:
            self.leave()

    def _call(self, name: str, tok: Token) -> n.Node:
        if name == "ordinal":
            return self._ordinal()
        v = self._args(SCHEMAS[name])
        if name == "gen_tnorm":
            return n.GenTnorm(v["f"])
        if name == "gen_tconorm":
            return n.GenTconorm(v["f"])
        if name == "representable":
            return n.Representable(v["f"], v["convention"])
        if name == "dual":
            return n.Dual(v["op"])
        if name == "rescale":
            return n.Rescale(v["op"], v["to"])
        if name == "umin":
            return n.Umin(v["T"], v["S"], v["e"])
        if name == "umax":
            return n.Umax(v["T"], v["S"], v["e"])
        if name == "transform":
            return n.Transform(v["op"], v["a"], v["b"], v["c"], v["d"], v["v"])
        if name == "part":
            if v.get("carrier") is None and v.get("op") is None:
                raise ParseError(tok.line, tok.column, "a carrier or an operator in part", "neither")
            return n.Part(v.get("carrier"), v.get("op"), v["rank"])
        return n.Example(v["name"])

    def _ordinal(self) -> n.Ordinal:
        self.expect("(")
        parts = []
        while True:
            tok = self.peek()
            if not (tok.kind is Tok.IDENT and tok.text.lower() == "part" and self.at("(", 1)):
                raise self.error("part(...)")
            node = self.parse_node()
            parts.append(node)
            if self.at(","):
                self.advance()
                continue
            break
        self.expect(")", "',' or ')'")
        return n.Ordinal(tuple(parts))

    def _args(self, schema: tuple[Param, ...]) -> dict:
        self.expect("(")
        by_name = {p.name: p for p in schema}
        values: dict = {}
        pos = 0
        if not self.at(")"):
            while True:
                tok = self.peek()
                if tok.kind is Tok.IDENT and self.at("=", 1):
                    key = _canon_key(tok.text)
                    if key not in by_name:
                        raise self.error("parameter name (" + ", ".join(by_name) + ")", tok)
                    if key in values:
                        raise self.error("a parameter not given before", tok)
                    self.advance()
                    self.advance()
                    param = by_name[key]
                else:
                    param = None
                    while pos < len(schema):
                        cand = schema[pos]
                        pos += 1
                        if cand.name in values:
                            continue
                        if cand.kind == "interval" and not cand.required and not (self.at("[") or self.at("(")):
                            continue
                        param = cand
                        break
                    if param is None:
                        raise self.error("')'")
                values[param.name] = self._value(param.kind)
                if self.at(","):
                    self.advance()
                    continue
                break
        close = self.peek()
        self.expect(")", "',' or ')'")
        for p in schema:
            if p.required and p.name not in values:
                raise self.error(f"parameter {p.name}", close)
        return values

    def _value(self, kind: str):
        if kind == "node":
            return self.parse_node()
        if kind == "expr":
            return self.parse_expr()
        if kind == "number":
            return self.parse_number()
        if kind == "integer":
            tok = self.peek()
            if tok.kind is not Tok.NUMBER or "." in tok.text:
                raise self.error("integer")
            self.advance()
            return int(tok.text)
        if kind == "interval":
            return self.parse_interval()
        if kind == "convention":
            tok = self.peek()
            if tok.kind is not Tok.IDENT or tok.text.lower() not in CONVENTIONS:
                raise self.error("conjunctive or disjunctive")
            self.advance()
            return CONVENTIONS[tok.text.lower()]
        tok = self.peek()
        if tok.kind is not Tok.IDENT:
            raise self.error("example name")
        try:
            item = ExampleKind.lookup(tok.text)
        except KeyError:
            raise self.error("example name (" + ", ".join(e.value for e in ExampleKind) + ")") from None
        self.advance()
        return item.value

    def parse_number(self) -> Fraction:
        tok = self.peek()
        if tok.kind is not Tok.NUMBER:
            raise self.error("number")
        self.advance()
        value = Fraction(tok.text)
        if self.at("/"):
            self.advance()
            den = self.peek()
            if den.kind is not Tok.NUMBER:
                raise self.error("number")
            self.advance()
            d = Fraction(den.text)
            if d == 0:
                raise ParseError(den.line, den.column, "non-zero denominator", repr(den.text))
            value /= d
        return value

    def parse_interval(self) -> n.IntervalLit:
        if not (self.at("[") or self.at("(")):
            raise self.error("interval")
        lo_closed = self.advance().text == "["
        lo = self.parse_number()
        self.expect(",", "','")
        hi = self.parse_number()
        if not (self.at("]") or self.at(")")):
            raise self.error("']' or ')'")
        hi_closed = self.advance().text == "]"
        return n.IntervalLit(lo, hi, lo_closed, hi_closed)

    # -- expressions ------------------------------------------------------------------

    def parse_expr(self) -> ex.Expr:
        self.enter()
        try:
            left = self._term()
            while self.at("+") or self.at("-"):
                op = self.advance().text
                left = ex.BinOp(op, left, self._term())
            return left
        finally:
            self.leave()

    def _term(self) -> ex.Expr:
        left = self._unary()
        while True:
            if self.at("*") or self.at("/"):
                op = self.advance().text
                right = self._unary()
            elif self.peek().kind is Tok.IDENT or self.at("("):
                op, right = "*", self._unary()  # implicit multiplication, e.g. 3x
            else:
                return left
            if (
                op == "/"
                and isinstance(left, ex.Num) and isinstance(right, ex.Num)
                and left.value.denominator == 1 and right.value.denominator == 1 and right.value != 0
            ):
                left = ex.Num(left.value / right.value)  # literal fraction p/q
            else:
                left = ex.BinOp(op, left, right)

    def _unary(self) -> ex.Expr:
        if self.at("-"):
            self.advance()
            self.enter()
            try:
                return ex.Neg(self._unary())
            finally:
                self.leave()
        return self._power()

    def _power(self) -> ex.Expr:
        base = self._atom()
        if self.at("^"):
            self.advance()
            self.enter()
            try:
                return ex.BinOp("^", base, self._unary())
            finally:
                self.leave()
        return base

    def _atom(self) -> ex.Expr:
        tok = self.peek()
        if tok.kind is Tok.NUMBER:
            self.advance()
            return ex.Num(Fraction(tok.text))
        if tok.kind is Tok.IDENT:
            name = tok.text.lower()
            if name == "x":
                self.advance()
                return ex.Var()
            if name in ex.FUNCTIONS and self.at("(", 1):
                self.advance()
                self.advance()
                arg = self.parse_expr()
                self.expect(")", "')'")
                return ex.Func(name, arg)
            raise self.error("expression (x, a number, ln or exp)")
        if self.at("("):
            self.advance()
            inner = self.parse_expr()
            self.expect(")", "')'")
            return inner
        raise self.error("expression")


def parse(text: str) -> n.Node:
    """Parse a specification; raises :class:`ParseError` and nothing else on bad input."""
    p = Parser(text)
    try:
        return p.parse_spec()
    except RecursionError:
        raise p.error(f"nesting depth at most {MAX_DEPTH}") from None


def parse_expr(text: str) -> ex.Expr:
    p = Parser(text)
    try:
        e = p.parse_expr()
    except RecursionError:
        raise p.error(f"nesting depth at most {MAX_DEPTH}") from None
    if p.peek().kind is not Tok.EOF:
        raise p.error("end of input")
    return e
