"""Canonical printer: lowercase keywords, exact fractions, one space after commas."""

from __future__ import annotations

from fractions import Fraction

from ..expr import format_expr
from ..numerics import InfinityConvention
from . import nodes as n


def fmt_number(v: Fraction) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def fmt_interval(iv: n.IntervalLit) -> str:
    return f"{'[' if iv.lo_closed else '('}{fmt_number(iv.lo)}, {fmt_number(iv.hi)}{']' if iv.hi_closed else ')'}"


def _conv(c: InfinityConvention) -> str:
    return "conjunctive" if c is InfinityConvention.SumIsMinusInfinity else "disjunctive"


def format_spec(node: n.Node) -> str:
    if isinstance(node, n.Builtin):
        return node.name
    if isinstance(node, n.GenTnorm):
        return f"gen_tnorm({format_expr(node.f)})"
    if isinstance(node, n.GenTconorm):
        return f"gen_tconorm({format_expr(node.f)})"
    if isinstance(node, n.Representable):
        return f"representable(f={format_expr(node.f)}, {_conv(node.convention)})"
    if isinstance(node, n.Dual):
        return f"dual({format_spec(node.child)})"
    if isinstance(node, n.Rescale):
        return f"rescale({format_spec(node.child)}, {fmt_interval(node.to)})"
    if isinstance(node, (n.Umin, n.Umax)):
        kw = "umin" if isinstance(node, n.Umin) else "umax"
        return f"{kw}(T={format_spec(node.T)}, S={format_spec(node.S)}, e={fmt_number(node.e)})"
    if isinstance(node, n.Transform):
        params = ", ".join(f"{k}={fmt_number(getattr(node, k))}" for k in "abcdv")
        return f"transform({format_spec(node.child)}, {params})"
    if isinstance(node, n.Part):
        items = []
        if node.carrier is not None:
            items.append(fmt_interval(node.carrier))
        if node.child is not None:
            items.append(format_spec(node.child))
        items.append(f"rank={node.rank}")
        return f"part({', '.join(items)})"
    if isinstance(node, n.Ordinal):
        return "ordinal(" + ", ".join(format_spec(p) for p in node.parts) + ")"
    if isinstance(node, n.Example):
        return f"example({node.name})"
    raise TypeError(f"not a spec node: {node!r}")
