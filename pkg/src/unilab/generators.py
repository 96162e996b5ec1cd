"""Additive generators and the operations they induce.

A generator is a monotone scalar function given either as an expression in x
or as a piecewise-linear sample table. It normally lives on [0, 1]; a
generator may also be declared on a sub-interval, in which case the produced
operator has that interval as its carrier.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path
from typing import Union

import numpy as np

from . import expr as ex
from .core import Operator, ValidationReport
from .errors import DomainError, InvalidGenerator
from .intervals import UNIT, CarrierSet, Interval, nice_number
from .numerics import (
    DEFAULT_TOLERANCES,
    Direction,
    InfinityConvention,
    ToleranceConfig,
    bisect_predicate,
    ext_add_array,
    monotone_inverse_array,
)


class GeneratorKind(enum.Enum):
    TNormGen = "tnorm"
    TConormGen = "tconorm"
    UninormGen = "uninorm"

    @property
    def direction(self) -> Direction:
        return Direction.Decreasing if self is GeneratorKind.TNormGen else Direction.Increasing


@dataclass(frozen=True)
class Table:
    """Piecewise-linear generator body given by samples (x_i strictly increasing)."""

    xs: tuple[float, ...]
    ys: tuple[float, ...]

    def __post_init__(self):
        if len(self.xs) != len(self.ys) or len(self.xs) < 2:
            raise InvalidGenerator("a table needs at least two (x, value) rows")
        xs = np.asarray(self.xs)
        if np.any(np.diff(xs) <= 0):
            raise InvalidGenerator("table x values must be strictly increasing")
        if not np.all(np.isfinite(self.ys)):
            raise InvalidGenerator("table values must be finite")

    def __call__(self, x) -> np.ndarray:
        return np.interp(np.asarray(x, dtype=float), self.xs, self.ys)

    def inverse(self, y) -> np.ndarray:
        """Exact segment-wise inverse of the interpolant (values must be strictly monotone)."""
        xs, ys = np.asarray(self.xs), np.asarray(self.ys)
        if ys[-1] < ys[0]:
            xs, ys = xs[::-1], ys[::-1]
        return np.interp(np.asarray(y, dtype=float), ys, xs)

    def scaled(self, c: float) -> "Table":
        return Table(self.xs, tuple(c * y for y in self.ys))


Body = Union[ex.Num, ex.Var, ex.Neg, ex.BinOp, ex.Func, Table]


def load_table(source: str | Path) -> Table:
    """Read the two-column text format: ``x<TAB>value`` per line, ``#`` comments."""
    text = Path(source).read_text(encoding="utf-8") if isinstance(source, Path) else source
    xs, ys = [], []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        cols = line.split()
        if len(cols) != 2:
            raise InvalidGenerator(f"line {lineno}: expected two columns, got {len(cols)}")
        try:
            xs.append(float(cols[0]))
            ys.append(float(cols[1]))
        except ValueError:
            raise InvalidGenerator(f"line {lineno}: not a number") from None
    return Table(tuple(xs), tuple(ys))


@dataclass(frozen=True)
class GeneratorSpec:
    kind: GeneratorKind
    body: Body
    domain: Interval = UNIT
    label: str = ""
    inverse: ex.Expr | None = field(default=None, compare=False)

    @classmethod
    def from_text(cls, kind: GeneratorKind, text: str, domain: Interval = UNIT) -> "GeneratorSpec":
        from .speclang.parser import parse_expr

        return cls(kind, parse_expr(text), domain)

    @property
    def is_table(self) -> bool:
        return isinstance(self.body, Table)

    def describe(self) -> str:
        if self.label:
            return self.label
        if self.is_table:
            return f"table[{len(self.body.xs)} rows]"
        return ex.format_expr(self.body)

    def raw(self, x) -> np.ndarray:
        if self.is_table:
            return self.body(x)
        return ex.evaluate(self.body, x)

    def __call__(self, x) -> np.ndarray:
        """Evaluate with the exact boundary infinities of uninorm generators."""
        x = np.asarray(x, dtype=float)
        out = self.raw(x)
        if self.kind is GeneratorKind.UninormGen:
            out = np.where(x <= self.domain.lo, -math.inf, out)
            out = np.where(x >= self.domain.hi, math.inf, out)
        return out

    @property
    def top(self) -> float:
        """t(lo) for t-norm generators, s(hi) for t-conorm generators."""
        if self.kind is GeneratorKind.TNormGen:
            return float(self.raw(self.domain.lo))
        if self.kind is GeneratorKind.TConormGen:
            return float(self.raw(self.domain.hi))
        return math.inf

    def scaled(self, c: float) -> "GeneratorSpec":
        if not c > 0:
            raise ValueError("generator scale must be positive")
        if self.is_table:
            body = self.body.scaled(c)
        else:
            body = ex.BinOp("*", ex.Num(Fraction(c).limit_denominator(10**9)), self.body)
        return replace(self, body=body, inverse=None, label="")

    def closed_inverse(self):
        """A vectorised inverse if one is known in closed form, else ``None``."""
        if self.is_table:
            return self.body.inverse
        inv = self.inverse if self.inverse is not None else ex.symbolic_inverse(self.body)
        if inv is None:
            return None
        return lambda y: ex.evaluate(inv, y)


def _gap_refine(g, lo: float, hi: float, steps: int = 60) -> tuple[float, float, float]:
    """Follow the larger half of a sample gap; returns (lo, hi, |g(hi)-g(lo)|)."""
    glo, ghi = float(g(lo)), float(g(hi))
    for _ in range(steps):
        m = lo + (hi - lo) / 2
        if m <= lo or m >= hi:
            break
        gm = float(g(m))
        if abs(gm - glo) >= abs(ghi - gm):
            hi, ghi = m, gm
        else:
            lo, glo = m, gm
    return lo, hi, abs(ghi - glo)


def validate_generator(g: GeneratorSpec, cfg: ToleranceConfig = DEFAULT_TOLERANCES, n: int = 1001) -> ValidationReport:
    """Check the generator invariants on ``n`` samples; never raises."""
    rep = ValidationReport(f"generator {g.describe()}")
    lo, hi = g.domain.lo, g.domain.hi
    if hi <= lo:
        rep.add("generator domain is degenerate")
        return rep
    xs = np.linspace(lo, hi, n)
    xs[0], xs[-1] = lo, hi
    try:
        vs = g.raw(xs)
    except Exception as exc:  # a broken body is a validation failure, not a crash
        rep.add(f"evaluation failed: {exc}")
        return rep
    nan = np.isnan(vs)
    if np.any(nan):
        i = int(np.argmax(nan))
        rep.add("generator undefined (NaN)", float(xs[i]))
        return rep

    kind = g.kind
    decreasing = kind is GeneratorKind.TNormGen
    expected = "decreasing" if decreasing else "increasing"
    if (vs[-1] > vs[0]) if decreasing else (vs[-1] < vs[0]):
        found = "increasing" if decreasing else "decreasing"
        rep.add(f"{found}, expected {expected}", lo, hi)
        return rep
    d = np.diff(vs)
    bad = d >= 0 if decreasing else d <= 0
    if np.any(bad):
        i = int(np.argmax(bad))
        rep.add(f"not strictly {expected}", float(xs[i]), float(xs[i + 1]))

    if kind is GeneratorKind.TNormGen:
        if not abs(vs[-1]) <= cfg.eq_tol:
            rep.add(f"value at {nice_number(hi)} is {vs[-1]:.6g}, expected 0", hi)
        if vs[0] == -math.inf or vs[0] < 0:
            rep.add("negative value at the left end", lo)
    elif kind is GeneratorKind.TConormGen:
        if not abs(vs[0]) <= cfg.eq_tol:
            rep.add(f"value at {nice_number(lo)} is {vs[0]:.6g}, expected 0", lo)
    else:
        if vs[0] != -math.inf:
            rep.add(f"value at {nice_number(lo)} is {vs[0]:.6g}, expected -inf", lo)
        if vs[-1] != math.inf:
            rep.add(f"value at {nice_number(hi)} is {vs[-1]:.6g}, expected +inf", hi)
        inner = vs[1:-1]
        if np.any(np.isinf(inner)):
            i = int(np.argmax(np.isinf(inner))) + 1
            rep.add("infinite value inside the domain", float(xs[i]))

    if not rep.ok:
        return rep

    # continuity: a gap between samples that survives refinement is a jump
    finite = np.isfinite(vs[:-1]) & np.isfinite(vs[1:])
    gaps = np.where(finite, np.abs(d), 0.0)
    for i in np.argsort(gaps)[::-1][:8]:
        if gaps[i] <= cfg.jump_tol:
            break
        a, b, gap = _gap_refine(lambda t: g.raw(t), float(xs[i]), float(xs[i + 1]))
        if gap > cfg.jump_tol and b - a < 1e-9:
            rep.add("discontinuous", a)
            break

    if kind is GeneratorKind.UninormGen and rep.ok:
        e = bisect_predicate(lambda t: float(g.raw(t)) >= 0.0, lo, hi, cfg.bisect_tol)
        rep.info["e"] = e
    return rep


def eval_generator(g: GeneratorSpec, x: float) -> float:
    x = float(x)
    if math.isnan(x) or not (g.domain.lo <= x <= g.domain.hi):
        raise DomainError(f"{x!r} is outside the generator domain {g.domain}")
    return float(g(x))


def _checked(g: GeneratorSpec, kind: GeneratorKind, cfg: ToleranceConfig) -> ValidationReport:
    if g.kind is not kind:
        raise InvalidGenerator(f"expected a {kind.value} generator, got {g.kind.value}")
    rep = validate_generator(g, cfg)
    if not rep.ok:
        raise InvalidGenerator(f"invalid generator: {rep}", report=rep)
    return rep


def _inverter(g: GeneratorSpec, cfg: ToleranceConfig):
    """Vectorised inverse: closed form when it checks out numerically, bisection otherwise."""
    lo, hi = g.domain.lo, g.domain.hi
    direction = g.kind.direction

    def by_bisection(y):
        return monotone_inverse_array(g.raw, y, lo, hi, direction, cfg)

    closed = g.closed_inverse()
    if closed is not None:
        probe = np.linspace(lo, hi, 67)[1:-1]
        with np.errstate(all="ignore"):
            back = closed(g.raw(probe))
        if not np.all(np.abs(back - probe) <= 1e-9):
            closed = None
    if closed is None:
        return by_bisection

    def invert(y):
        y = np.asarray(y, dtype=float)
        with np.errstate(all="ignore"):
            out = np.asarray(closed(y), dtype=float) * np.ones_like(y)
        bad = ~np.isfinite(out) | (out < lo - 1e-12) | (out > hi + 1e-12)
        if np.any(bad):
            out = np.where(bad, by_bisection(np.where(bad, y, 0.0)), out)
        return np.clip(out, lo, hi)

    return invert


def _provenance(prefix: str, g: GeneratorSpec) -> str:
    tail = "" if g.domain == UNIT else f" on {g.domain}"
    return f"{prefix}({g.describe()}){tail}"


def tnorm_from_generator(g: GeneratorSpec, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> Operator:
    _checked(g, GeneratorKind.TNormGen, cfg)
    lo, hi = g.domain.lo, g.domain.hi
    top = g.top
    inv = _inverter(g, cfg)

    def func(x, y):
        s = np.minimum(top, g.raw(x) + g.raw(y))
        out = np.where(s >= top, lo, inv(np.where(s >= top, 0.0, s)))
        out = np.where(x >= hi, y, out)
        return np.where(y >= hi, x, out)

    return Operator(CarrierSet.of(g.domain), func, neutral=hi, annihilator=lo,
                    provenance=_provenance("gen_tnorm", g), snap_tol=cfg.eq_tol)


def tconorm_from_generator(g: GeneratorSpec, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> Operator:
    _checked(g, GeneratorKind.TConormGen, cfg)
    lo, hi = g.domain.lo, g.domain.hi
    top = g.top
    inv = _inverter(g, cfg)

    def func(x, y):
        s = np.minimum(top, g.raw(x) + g.raw(y))
        out = np.where(s >= top, hi, inv(np.where(s >= top, 0.0, s)))
        out = np.where(x <= lo, y, out)
        return np.where(y <= lo, x, out)

    return Operator(CarrierSet.of(g.domain), func, neutral=lo, annihilator=hi,
                    provenance=_provenance("gen_tconorm", g), snap_tol=cfg.eq_tol)


def representable_from_generator(
    g: GeneratorSpec, conv: InfinityConvention, cfg: ToleranceConfig = DEFAULT_TOLERANCES
) -> Operator:
    rep = _checked(g, GeneratorKind.UninormGen, cfg)
    lo, hi = g.domain.lo, g.domain.hi
    e = rep.info["e"]
    corner = lo if conv is InfinityConvention.SumIsMinusInfinity else hi
    inv = _inverter(g, cfg)

    def func(x, y):
        # boundary rows never touch infinities
        x, y = np.minimum(x, y), np.maximum(x, y)
        fx, fy = g.raw(x), g.raw(y)
        s = ext_add_array(np.where(x <= lo, -math.inf, fx), np.where(y >= hi, math.inf, fy), conv)
        finite = np.isfinite(s)
        out = inv(np.where(finite, s, 0.0))
        out = np.where(s == math.inf, hi, np.where(s == -math.inf, lo, out))
        out = np.where((x <= lo) & (y >= hi), corner, out)
        out = np.where((x <= lo) & (y < hi), lo, out)
        out = np.where((y >= hi) & (x > lo), hi, out)
        out = np.where(x == e, y, out)
        return np.where(y == e, x, out)

    return Operator(
        CarrierSet.of(g.domain),
        func,
        neutral=e,
        annihilator=corner,
        provenance=_provenance(f"representable[{conv.value}]", g),
        anchors=(e,),
        notes=(f"convention {conv.value}",),
        snap_tol=cfg.eq_tol,
    )
