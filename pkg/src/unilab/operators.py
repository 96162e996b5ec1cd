"""Operator algebra: builtins, duality, rescaling, pastings, the carrier transform, ordinal sums."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import Operator, ValidationReport
from .errors import AxiomError, CarrierError, ParameterError, PreconditionError
from .intervals import UNIT, CarrierSet, Interval, nice_number
from .numerics import DEFAULT_TOLERANCES, ToleranceConfig, unit_value


class Builtin(enum.Enum):
    Min = "min"
    Max = "max"
    Product = "product"
    ProbabilisticSum = "prob_sum"
    Lukasiewicz = "lukasiewicz"
    LukasiewiczConorm = "lukasiewicz_conorm"
    DrasticTnorm = "drastic_tnorm"
    DrasticTconorm = "drastic_tconorm"

    @property
    def is_tnorm(self) -> bool:
        return self in (Builtin.Min, Builtin.Product, Builtin.Lukasiewicz, Builtin.DrasticTnorm)


def _drastic_t(x, y):
    return np.where(np.maximum(x, y) >= 1.0, np.minimum(x, y), 0.0)


def _drastic_s(x, y):
    return np.where(np.minimum(x, y) <= 0.0, np.maximum(x, y), 1.0)


_BUILTIN_FUNCS = {
    Builtin.Min: np.minimum,
    Builtin.Max: np.maximum,
    Builtin.Product: lambda x, y: x * y,
    Builtin.ProbabilisticSum: lambda x, y: x + y - x * y,
    Builtin.Lukasiewicz: lambda x, y: np.maximum(x + y - 1.0, 0.0),
    Builtin.LukasiewiczConorm: lambda x, y: np.minimum(x + y, 1.0),
    Builtin.DrasticTnorm: _drastic_t,
    Builtin.DrasticTconorm: _drastic_s,
}


def builtin(name: Builtin | str) -> Operator:
    b = name if isinstance(name, Builtin) else Builtin(str(name).lower())
    neutral, annihilator = (1.0, 0.0) if b.is_tnorm else (0.0, 1.0)
    return Operator(CarrierSet.unit(), _BUILTIN_FUNCS[b], neutral, annihilator, provenance=b.value)


def _require_full(op: Operator, what: str) -> None:
    if not op.is_full:
        raise CarrierError(f"{what} needs an operator on [0, 1], got carrier {op.carrier}")


def dualize(op: Operator) -> Operator:
    """S(x, y) = 1 - T(1 - x, 1 - y)."""
    _require_full(op, "dualize")
    f = op.func

    def func(x, y):
        return 1.0 - f(1.0 - np.maximum(x, y), 1.0 - np.minimum(x, y))

    flip = lambda v: None if v is None else 1.0 - v  # noqa: E731
    return Operator(
        op.carrier,
        func,
        flip(op.neutral),
        flip(op.annihilator),
        provenance=f"dual({op.provenance})",
        anchors=tuple(1.0 - a for a in op.anchors),
        snap_tol=op.snap_tol,
    )


def linear_rescale(op: Operator, target: Interval) -> Operator:
    """Conjugate ``op`` by the affine bijection [0, 1] -> ``target``."""
    _require_full(op, "linear_rescale")
    if target.is_singleton:
        raise CarrierError("cannot rescale onto a single point")
    lo, width = target.lo, target.hi - target.lo
    f = op.func
    inner_e = op.neutral
    outer_e = None if inner_e is None else target.affine_to(inner_e)

    def func(x, y):
        u = np.clip((x - lo) / width, 0.0, 1.0)
        w = np.clip((y - lo) / width, 0.0, 1.0)
        out = lo + width * np.asarray(f(u, w), dtype=float)
        if outer_e is not None:
            out = np.where(x == outer_e, y, np.where(y == outer_e, x, out))
        return np.clip(out, target.lo, target.hi)

    return Operator(
        CarrierSet.of(target),
        func,
        outer_e,
        None if op.annihilator is None else target.affine_to(op.annihilator),
        provenance=f"rescale({op.provenance}, {target})",
        anchors=tuple(target.affine_to(a) for a in op.anchors),
        snap_tol=op.snap_tol,
    )


# -- U_min / U_max pastings -----------------------------------------------------


def _check_block(op: Operator, neutral: float, what: str, cfg: ToleranceConfig) -> None:
    from .axioms import GridSpec, check_axioms

    _require_full(op, what)
    if op.neutral is None or abs(op.neutral - neutral) > cfg.eq_tol:
        raise AxiomError(f"{what} must have neutral element {nice_number(neutral)}")
    rep = check_axioms(op, GridSpec(33), cfg, assoc_n=17)
    if not rep.ok:
        raise AxiomError(f"{what} fails its axiom suite: " + "; ".join(map(str, rep.failures())), report=rep)


def _paste(T: Operator, S: Operator, e: float, mixed, label: str, cfg: ToleranceConfig) -> Operator:
    e = unit_value(e, cfg)
    _check_block(T, 1.0, "the t-norm block", cfg)
    _check_block(S, 0.0, "the t-conorm block", cfg)
    tf, sf = T.func, S.func

    def func(x, y):
        lo, hi = np.minimum(x, y), np.maximum(x, y)
        out = mixed(lo, hi)
        if e > 0.0:
            t = e * np.asarray(tf(np.clip(lo / e, 0, 1), np.clip(hi / e, 0, 1)), dtype=float)
            out = np.where(hi <= e, np.clip(t, 0.0, e), out)
        if e < 1.0:
            w = 1.0 - e
            s = e + w * np.asarray(sf(np.clip((lo - e) / w, 0, 1), np.clip((hi - e) / w, 0, 1)), dtype=float)
            out = np.where(lo >= e, np.clip(s, e, 1.0), out)
        out = np.where(lo == e, hi, out)
        return np.where(hi == e, lo, out)

    annihilator = float(func(np.array(0.0), np.array(1.0)))
    return Operator(
        CarrierSet.unit(),
        func,
        e,
        annihilator,
        provenance=f"{label}(T={T.provenance}, S={S.provenance}, e={nice_number(e)})",
        anchors=(e,),
        snap_tol=cfg.eq_tol,
    )


def umin_construct(T: Operator, S: Operator, e: float, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> Operator:
    return _paste(T, S, e, np.minimum, "umin", cfg)


def umax_construct(T: Operator, S: Operator, e: float, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> Operator:
    return _paste(T, S, e, np.maximum, "umax", cfg)


# -- piecewise linear carrier transform -------------------------------------------


@dataclass(frozen=True)
class CarrierMap:
    """The piecewise-linear bijection [0,1] -> [a,b) u {v} u (c,d] fixing e -> v."""

    e: float
    a: float
    b: float
    c: float
    d: float
    v: float

    def forward(self, x):
        x = np.asarray(x, dtype=float)
        e = self.e
        low = self.a + (self.b - self.a) * (x / e)
        high = self.c + (self.d - self.c) * ((x - e) / (1.0 - e))
        return np.where(x < e, np.minimum(low, np.nextafter(self.b, -np.inf)),
                        np.where(x > e, np.maximum(high, np.nextafter(self.c, np.inf)), self.v))

    def backward(self, y):
        y = np.asarray(y, dtype=float)
        e = self.e
        low = e * (y - self.a) / (self.b - self.a)
        high = e + (1.0 - e) * (y - self.c) / (self.d - self.c)
        out = np.where(y < self.b, np.clip(low, 0.0, e), np.clip(high, e, 1.0))
        return np.where(y == self.v, e, out)

    @property
    def carrier(self) -> CarrierSet:
        return CarrierSet.of(
            Interval(self.a, self.b, True, False),
            Interval.point(self.v),
            Interval(self.c, self.d, False, True),
        )


def piecewise_transform(
    U: Operator, a: float, b: float, c: float, d: float, v: float, cfg: ToleranceConfig = DEFAULT_TOLERANCES
) -> Operator:
    if not (0.0 <= a < b <= c < d <= 1.0):
        raise ParameterError(
            f"transform needs 0 <= a < b <= c < d <= 1, got a={nice_number(a)}, b={nice_number(b)}, "
            f"c={nice_number(c)}, d={nice_number(d)}"
        )
    if not (b <= v <= c):
        raise ParameterError(f"transform needs v in [b, c], got v={nice_number(v)}")
    _require_full(U, "piecewise_transform")
    if U.neutral is None or not (0.0 < U.neutral < 1.0):
        raise ParameterError("transform needs an operator with a neutral element inside (0, 1)")
    m = CarrierMap(U.neutral, a, b, c, d, v)
    inner = U.func
    e, tol = U.neutral, cfg.eq_tol

    def func(x, y):
        z = np.asarray(inner(m.backward(np.minimum(x, y)), m.backward(np.maximum(x, y))), dtype=float)
        z = np.where(np.abs(z - e) <= tol, e, z)
        out = m.forward(z)
        return np.where(x == v, y, np.where(y == v, x, out))

    return Operator(
        m.carrier,
        func,
        v,
        None if U.annihilator is None else float(m.forward(U.annihilator)),
        provenance=f"transform({U.provenance}, {', '.join(nice_number(t) for t in (a, b, c, d, v))})",
        anchors=(a, b, c, d, v),
        snap_tol=cfg.eq_tol,
    )


# -- ordinal sums ---------------------------------------------------------------


def singleton(p: float) -> Operator:
    """The one-element semigroup {p}."""
    p = unit_value(p)
    return Operator(CarrierSet.of(Interval.point(p)), lambda x, y: np.full(np.broadcast(x, y).shape, p),
                    p, p, provenance=f"singleton({nice_number(p)})")


@dataclass(frozen=True)
class SemigroupPart:
    carrier: CarrierSet
    op: Operator
    rank: int
    declared_neutral: float | None = None
    declared_annihilator: float | None = None

    def __post_init__(self):
        if self.op.carrier != self.carrier:
            raise CarrierError(f"part carrier {self.carrier} differs from its operator's carrier {self.op.carrier}")
        if self.declared_neutral is None:
            object.__setattr__(self, "declared_neutral", self.op.neutral)
        if self.declared_annihilator is None:
            object.__setattr__(self, "declared_annihilator", self.op.annihilator)

    @classmethod
    def of(cls, op: Operator, rank: int) -> "SemigroupPart":
        return cls(op.carrier, op, rank)


def _same(p: float | None, q: float, tol: float) -> bool:
    return p is not None and abs(p - q) <= tol


def validate_clifford(parts: Sequence[SemigroupPart], cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> ValidationReport:
    rep = ValidationReport("ordinal sum")
    if not parts:
        rep.add("an ordinal sum needs at least one part")
        return rep
    ranks = [p.rank for p in parts]
    if len(set(ranks)) != len(ranks):
        rep.add("ranks must be unique", *sorted(r for r in set(ranks) if ranks.count(r) > 1))
    ordered = sorted(parts, key=lambda p: p.rank)
    for i, lower in enumerate(ordered):
        for j in range(i + 1, len(ordered)):
            upper = ordered[j]
            pair = f"ranks {lower.rank} < {upper.rank}"
            shared, overlap = lower.carrier.intersection_points(upper.carrier)
            if overlap:
                rep.add(f"carriers of {pair} overlap in more than one point")
                continue
            if not shared:
                continue
            if len(shared) > 1:
                rep.add(f"carriers of {pair} share several points", *shared)
                continue
            p = shared[0]
            if not _same(lower.declared_neutral, p, cfg.eq_tol):
                rep.add(f"shared point {nice_number(p)} of {pair} is not neutral of lower-ranked part", p)
            if not _same(upper.declared_annihilator, p, cfg.eq_tol):
                rep.add(f"shared point {nice_number(p)} of {pair} is not annihilator of higher-ranked part", p)
            single = CarrierSet.of(Interval.point(p))
            for mid in ordered[i + 1 : j]:
                if mid.carrier != single:
                    rep.add(
                        f"intermediate part of rank {mid.rank} between {pair} must equal {{{nice_number(p)}}} "
                        f"at shared point {nice_number(p)}",
                        p,
                    )
    return rep


def _nearest_part(carriers: list[CarrierSet], x: np.ndarray, tol: float) -> np.ndarray:
    """Index of the first (lowest-rank) carrier containing x, falling back to the nearest within tol."""
    ix = np.full(x.shape, -1, dtype=int)
    for k, c in enumerate(carriers):
        ix = np.where((ix < 0) & c.contains_array(x), k, ix)
    if np.any(ix < 0):
        best = np.full(x.shape, np.inf)
        cand = np.full(x.shape, -1, dtype=int)
        for k, c in enumerate(carriers):
            for iv in c.parts:
                dist = np.abs(np.clip(x, iv.lo, iv.hi) - x)
                better = (ix < 0) & (dist <= tol) & (dist < best)
                best = np.where(better, dist, best)
                cand = np.where(better, k, cand)
        ix = np.where(ix < 0, cand, ix)
        if np.any(ix < 0):
            raise CarrierError(f"{float(x[ix < 0].flat[0])!r} is outside every part")
    return ix


def clifford_sum(
    parts: Sequence[SemigroupPart],
    cfg: ToleranceConfig = DEFAULT_TOLERANCES,
    neutral: float | None = None,
    provenance: str = "",
) -> Operator:
    rep = validate_clifford(parts, cfg)
    if not rep.ok:
        raise PreconditionError("ordinal sum preconditions fail: " + "; ".join(map(str, rep.violations)), report=rep)
    ordered = sorted(parts, key=lambda p: p.rank)
    carriers = [p.carrier for p in ordered]
    ops = [p.op for p in ordered]
    tol = cfg.eq_tol

    def func(x, y):
        x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
        ix = _nearest_part(carriers, x, tol)
        iy = _nearest_part(carriers, y, tol)
        out = np.where(ix < iy, x, y)
        same = ix == iy
        for k, op in enumerate(ops):
            m = same & (ix == k)
            if np.any(m):
                xs = carriers[k].snap_array(x[m], tol)
                ys = carriers[k].snap_array(y[m], tol)
                out[m] = op.raw(xs, ys)
        return out

    if neutral is None:
        neutral = ordered[-1].declared_neutral
    anchors = sorted({pt for c in carriers for pt in c.endpoints()} | {a for op in ops for a in op.anchors})
    op = Operator(
        CarrierSet([iv for c in carriers for iv in c.parts]),
        func,
        neutral,
        ordered[0].declared_annihilator,
        provenance=provenance or "ordinal(" + ", ".join(f"{p.op.provenance}@{p.rank}" for p in ordered) + ")",
        anchors=tuple(anchors),
        snap_tol=tol,
    )
    if neutral is not None:
        pts = np.array([pt for c in carriers for pt in _carrier_samples(c)])
        dev = np.abs(op.values(np.full_like(pts, neutral), pts) - pts)
        if np.any(dev > cfg.jump_tol):
            raise PreconditionError(f"{nice_number(neutral)} is not a neutral element of the ordinal sum")
    return op


def _carrier_samples(c: CarrierSet, k: int = 9) -> list[float]:
    out = []
    for iv in c.parts:
        ts = np.linspace(iv.lo, iv.hi, k)
        out.extend(t for t in ts if iv.contains(t))
    return out
