"""Syntax tree of operator specifications. Numbers are exact fractions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from ..expr import Expr
from ..numerics import InfinityConvention


@dataclass(frozen=True)
class IntervalLit:
    lo: Fraction
    hi: Fraction
    lo_closed: bool = True
    hi_closed: bool = True


@dataclass(frozen=True)
class Builtin:
    name: str


@dataclass(frozen=True)
class GenTnorm:
    f: Expr


@dataclass(frozen=True)
class GenTconorm:
    f: Expr


@dataclass(frozen=True)
class Representable:
    f: Expr
    convention: InfinityConvention


@dataclass(frozen=True)
class Dual:
    child: "Node"


@dataclass(frozen=True)
class Rescale:
    child: "Node"
    to: IntervalLit


@dataclass(frozen=True)
class Umin:
    T: "Node"
    S: "Node"
    e: Fraction


@dataclass(frozen=True)
class Umax:
    T: "Node"
    S: "Node"
    e: Fraction


@dataclass(frozen=True)
class Transform:
    child: "Node"
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    v: Fraction


@dataclass(frozen=True)
class Part:
    carrier: IntervalLit | None
    child: "Node | None"
    rank: int


@dataclass(frozen=True)
class Ordinal:
    parts: tuple[Part, ...]


@dataclass(frozen=True)
class Example:
    name: str


Node = Union[Builtin, GenTnorm, GenTconorm, Representable, Dual, Rescale, Umin, Umax, Transform, Ordinal, Part, Example]

GENERATOR_NODES = (GenTnorm, GenTconorm, Representable)
