"""Compile specification trees into operators.

Errors raised while building a node get the node's path attached, e.g.
``ordinal.part[2].representable``.
"""

from __future__ import annotations

from dataclasses import replace

from ..core import Operator
from ..errors import CarrierError, InvalidGenerator, UnilabError
from ..generators import (
    GeneratorKind,
    GeneratorSpec,
    representable_from_generator,
    tconorm_from_generator,
    tnorm_from_generator,
)
from ..intervals import UNIT, CarrierSet, Interval
from ..numerics import DEFAULT_TOLERANCES, ToleranceConfig
from ..operators import (
    SemigroupPart,
    builtin,
    clifford_sum,
    dualize,
    linear_rescale,
    piecewise_transform,
    singleton,
    umax_construct,
    umin_construct,
)
from ..registry import example
from . import nodes as n
from .parser import parse


def interval(iv: n.IntervalLit) -> Interval:
    return Interval(float(iv.lo), float(iv.hi), iv.lo_closed, iv.hi_closed)


def _generator(node, domain: Interval, cfg: ToleranceConfig) -> Operator:
    if isinstance(node, n.GenTnorm):
        return tnorm_from_generator(GeneratorSpec(GeneratorKind.TNormGen, node.f, domain), cfg)
    if isinstance(node, n.GenTconorm):
        return tconorm_from_generator(GeneratorSpec(GeneratorKind.TConormGen, node.f, domain), cfg)
    return representable_from_generator(GeneratorSpec(GeneratorKind.UninormGen, node.f, domain), node.convention, cfg)


_KEYWORDS = {n.GenTnorm: "gen_tnorm", n.GenTconorm: "gen_tconorm"}


def _name(node) -> str:
    if isinstance(node, n.Builtin):
        return node.name
    return _KEYWORDS.get(type(node), type(node).__name__.lower())


def _build(node, cfg: ToleranceConfig, path: str) -> Operator:
    try:
        return _build_inner(node, cfg, path)
    except UnilabError as err:
        raise err.with_path(path)


def _build_inner(node, cfg: ToleranceConfig, path: str) -> Operator:
    if isinstance(node, n.Builtin):
        return builtin(node.name)
    if isinstance(node, n.GENERATOR_NODES):
        return _generator(node, UNIT, cfg)
    if isinstance(node, n.Dual):
        return dualize(_build(node.child, cfg, f"{path}.{_name(node.child)}"))
    if isinstance(node, n.Rescale):
        return linear_rescale(_build(node.child, cfg, f"{path}.{_name(node.child)}"), interval(node.to))
    if isinstance(node, (n.Umin, n.Umax)):
        T = _build(node.T, cfg, f"{path}.T")
        S = _build(node.S, cfg, f"{path}.S")
        make = umin_construct if isinstance(node, n.Umin) else umax_construct
        return make(T, S, float(node.e), cfg)
    if isinstance(node, n.Transform):
        child = _build(node.child, cfg, f"{path}.{_name(node.child)}")
        a, b, c, d, v = (float(getattr(node, k)) for k in "abcdv")
        return piecewise_transform(child, a, b, c, d, v, cfg)
    if isinstance(node, n.Ordinal):
        parts = [_part(p, cfg, f"{path}.part[{i}]") for i, p in enumerate(node.parts)]
        return clifford_sum(parts, cfg)
    if isinstance(node, n.Example):
        return example(node.name)
    if isinstance(node, n.Part):
        raise CarrierError("part(...) is only meaningful inside ordinal(...)")
    raise TypeError(f"not a spec node: {node!r}")


def _part(node: n.Part, cfg: ToleranceConfig, path: str) -> SemigroupPart:
    try:
        return SemigroupPart.of(_part_op(node, cfg, path), node.rank)
    except UnilabError as err:
        raise err.with_path(path)


def _part_op(node: n.Part, cfg: ToleranceConfig, path: str) -> Operator:
    child_path = f"{path}.{_name(node.child)}" if node.child is not None else path
    if node.child is None:
        iv = interval(node.carrier)
        if not iv.is_singleton:
            raise CarrierError("a part without an operator must be a single point [p, p]")
        return singleton(iv.lo)
    if node.carrier is None:
        return _build(node.child, cfg, child_path)
    target = interval(node.carrier)
    carrier = CarrierSet.of(target)
    if target.is_singleton:
        raise CarrierError("a single-point part takes no operator")
    if isinstance(node.child, n.GENERATOR_NODES):
        # generators are read in unit coordinates first, then in the part's own coordinates
        try:
            unit_op = _generator(node.child, UNIT, cfg)
        except InvalidGenerator as first:
            hull = Interval(target.lo, target.hi)
            try:
                op = _generator(node.child, hull, cfg)
            except InvalidGenerator:
                raise first.with_path(child_path) from None
            return replace(op, carrier=carrier)
        return linear_rescale(unit_op, target)
    op = _build(node.child, cfg, child_path)
    if op.carrier == carrier:
        return op
    if op.is_full:
        return linear_rescale(op, target)
    raise CarrierError(f"operator carrier {op.carrier} does not match part carrier {carrier}").with_path(child_path)


def compile_spec(node: n.Node, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> Operator:
    """Build the operator for a parsed spec; construction-time validation runs here."""
    op = _build(node, cfg, _name(node))
    from .format import format_spec

    return replace(op, provenance=format_spec(node)) if not isinstance(node, n.Example) else op


def compile_text(text: str, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> Operator:
    return compile_spec(parse(text), cfg)
