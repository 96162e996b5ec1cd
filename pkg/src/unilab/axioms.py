"""Sampling grids and the axiom suite (commutativity, associativity, monotonicity, neutrality)."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import Operator
from .errors import CarrierError
from .numerics import DEFAULT_TOLERANCES, ToleranceConfig


@dataclass(frozen=True)
class GridSpec:
    n: int = 257
    anchor_points: frozenset = frozenset()

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("a grid needs at least 3 points per axis")

    @property
    def step(self) -> float:
        return 1.0 / (self.n - 1)

    def points(self, op: Operator | None = None) -> np.ndarray:
        """Sorted, deduplicated grid points; restricted to the carrier of ``op`` if given."""
        pts = set(np.linspace(0.0, 1.0, self.n).tolist())
        pts.update(float(p) for p in self.anchor_points)
        pts.update((0.0, 1.0))
        if op is not None:
            pts.update(op.anchor_points())
        arr = np.array(sorted(p for p in pts if 0.0 <= p <= 1.0))
        if op is not None and not op.is_full:
            arr = arr[op.carrier.contains_array(arr)]
        return arr


@dataclass(frozen=True)
class AxiomResult:
    name: str
    passed: bool
    max_deviation: float
    witness: tuple = ()
    skipped: bool = False

    def __str__(self) -> str:
        if self.skipped:
            return f"{self.name}: skipped"
        verdict = "pass" if self.passed else "FAIL"
        w = "" if not self.witness else " witness=" + ",".join(f"{v:.6g}" for v in self.witness)
        return f"{self.name}: {verdict} (max deviation {self.max_deviation:.3g}){w}"


@dataclass
class AxiomReport:
    subject: str
    results: dict[str, AxiomResult] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r.passed or r.skipped for r in self.results.values())

    def failures(self) -> list[AxiomResult]:
        return [r for r in self.results.values() if not (r.passed or r.skipped)]

    def __str__(self) -> str:
        return "\n".join(str(r) for r in self.results.values())


def _worst(dev: np.ndarray, *coords: np.ndarray) -> tuple[float, tuple]:
    if dev.size == 0:
        return 0.0, ()
    i = int(np.argmax(dev))
    return float(dev.flat[i]), tuple(float(c.flat[i]) for c in coords)


def check_axioms(
    op: Operator,
    grid: GridSpec | None = None,
    cfg: ToleranceConfig = DEFAULT_TOLERANCES,
    assoc_n: int = 41,
) -> AxiomReport:
    grid = grid or GridSpec()
    tol = cfg.eq_tol
    report = AxiomReport(op.describe())
    pts = grid.points(op)
    X, Y = np.meshgrid(pts, pts, indexing="ij")

    # commutativity of the construction itself, bypassing canonical ordering
    with np.errstate(all="ignore"):
        a = np.asarray(op.func(X, Y), dtype=float)
        b = np.asarray(op.func(Y, X), dtype=float)
    dev = np.abs(a - b)
    dev = np.where(np.isnan(dev), np.inf, dev)
    m, w = _worst(dev, X, Y)
    report.results["commutativity"] = AxiomResult("commutativity", m <= tol, m, w)

    try:
        V = op.values(X, Y)
        closure_ok, closure_dev, closure_w = True, 0.0, ()
    except CarrierError:
        V = op.raw(X, Y)
        bad = ~op.carrier.contains_array(V)
        closure_ok = False
        closure_dev = 1.0
        closure_w = (float(X[bad][0]), float(Y[bad][0]))
    report.results["closure"] = AxiomResult("closure", closure_ok, closure_dev, closure_w)

    # monotone in each argument along the sorted carrier points
    dx = V[:-1, :] - V[1:, :]
    dy = V[:, :-1] - V[:, 1:]
    m1, w1 = _worst(dx, X[:-1, :], Y[:-1, :])
    m2, w2 = _worst(dy, X[:, :-1], Y[:, :-1])
    m, w = (m1, w1) if m1 >= m2 else (m2, w2)
    report.results["monotonicity"] = AxiomResult("monotonicity", m <= tol, max(m, 0.0), w)

    if op.neutral is not None:
        dev = np.abs(op.values(np.full_like(pts, op.neutral), pts) - pts)
        m, w = _worst(dev, pts)
        report.results["neutral"] = AxiomResult("neutral", m <= tol, m, w)
    else:
        report.results["neutral"] = AxiomResult("neutral", True, 0.0, skipped=True)

    small = GridSpec(assoc_n, grid.anchor_points).points(op)
    A, B, C = np.meshgrid(small, small, small, indexing="ij")
    try:
        left = op.values(op.values(A, B), C)
        right = op.values(A, op.values(B, C))
        dev = np.abs(left - right)
        m, w = _worst(dev, A, B, C)
        report.results["associativity"] = AxiomResult("associativity", m <= tol, m, w)
    except CarrierError:
        report.results["associativity"] = AxiomResult("associativity", False, float("inf"))
    return report
