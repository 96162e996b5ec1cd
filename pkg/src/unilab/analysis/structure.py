"""Structural quantities of a uninorm: underlying operations, power limits,
the boundary parameters A and B, the e-band and the level thresholds."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..axioms import GridSpec
from ..core import Operator
from ..errors import NonConvergence, PreconditionError
from ..intervals import CarrierSet
from ..numerics import DEFAULT_TOLERANCES, ToleranceConfig, bisect_predicate_array
from ..operators import Builtin, builtin

SNAP_TOL = 1e-8
LEVEL_STEP = 2.0 ** -30


def _neutral(U: Operator) -> float:
    if U.neutral is None:
        raise PreconditionError("operator has no neutral element")
    return float(U.neutral)


def anchor_set(U: Operator, *extra: float) -> np.ndarray:
    pts = {0.0, 1.0, *U.anchor_points(), *extra}
    return np.array(sorted(pts))


def snap(values, anchors: np.ndarray, tol: float = SNAP_TOL) -> np.ndarray:
    v = np.atleast_1d(np.asarray(values, dtype=float))
    if anchors.size == 0:
        return v
    d = np.abs(v[:, None] - anchors[None, :])
    k = np.argmin(d, axis=1)
    return np.where(d[np.arange(v.size), k] <= tol, anchors[k], v)


def underlying_ops(U: Operator) -> tuple[Operator, Operator]:
    """The t-norm on [0, e] and the t-conorm on [e, 1], rescaled to the unit square.

    With e = 0 the t-norm part is degenerate and Min is returned for it; with
    e = 1 the t-conorm part is Max.
    """
    e = _neutral(U)
    f = U.values
    unit = CarrierSet.unit()
    if e <= 0.0:
        T = builtin(Builtin.Min)
    else:
        def tf(x, y):
            return np.clip(np.asarray(f(e * np.asarray(x), e * np.asarray(y)), dtype=float) / e, 0.0, 1.0)

        T = Operator(unit, tf, 1.0, 0.0, provenance=f"T_U({U.provenance})",
                     anchors=tuple(a / e for a in U.anchor_points() if a < e))
    if e >= 1.0:
        S = builtin(Builtin.Max)
    else:
        w = 1.0 - e

        def sf(x, y):
            out = (np.asarray(f(e + w * np.asarray(x), e + w * np.asarray(y)), dtype=float) - e) / w
            return np.clip(out, 0.0, 1.0)

        S = Operator(unit, sf, 0.0, 1.0, provenance=f"S_U({U.provenance})",
                     anchors=tuple((a - e) / w for a in U.anchor_points() if a > e))
    return T, S


def power_limit(U: Operator, x: float, cfg: ToleranceConfig = DEFAULT_TOLERANCES, max_iter: int = 200) -> float:
    """lim x^(n) of the powers x, U(x, x), ...; squaring z <- U(z, z) walks the 2^k subsequence."""
    z = float(x)
    anchors = anchor_set(U)
    for _ in range(max_iter):
        nz = float(U.values(z, z))
        if abs(nz - z) <= cfg.bisect_tol:
            return float(snap(nz, anchors)[0])
        z = nz
    raise NonConvergence(f"powers of {x!r} did not settle after {max_iter} squarings")


def thresholds(U: Operator, xs, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> tuple[np.ndarray, np.ndarray]:
    """t_ge(x) = inf{y : U(x, y) >= e} and t_gt(x) = inf{y : U(x, y) > e}, with inf of the empty set = 1."""
    e = _neutral(U)
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    zeros, ones = np.zeros_like(xs), np.ones_like(xs)
    t_ge = bisect_predicate_array(lambda y: U.values(xs, y) >= e - cfg.eq_tol, zeros, ones, cfg.bisect_tol)
    t_gt = bisect_predicate_array(lambda y: U.values(xs, y) > e + cfg.eq_tol, zeros, ones, cfg.bisect_tol)
    anchors = anchor_set(U)
    return snap(t_ge, anchors), snap(t_gt, anchors)


@dataclass(frozen=True)
class LevelPairs:
    """Grid points x < e with a partner y such that U(x, y) = e."""

    xs: np.ndarray
    ys: np.ndarray

    def __len__(self) -> int:
        return int(self.xs.size)


def level_pairs(U: Operator, xs, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> LevelPairs:
    """Solve U(x, y) = e in y for each x, keeping only x where a solution exists.

    The predicate U(x, y) >= e is bisected; x counts as solvable when the
    value at the switch is e (within ``eq_tol``) and the section crosses e
    continuously there, so that e is a value and not merely a limit.
    """
    e = _neutral(U)
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    if xs.size == 0:
        return LevelPairs(xs, xs)
    # half the tolerance: the value at the switch point then sits well inside eq_tol
    pred = lambda y: U.values(xs, y) >= e - cfg.eq_tol / 2  # noqa: E731
    lo, hi = np.zeros_like(xs), np.ones_like(xs)
    ok_hi = pred(hi)
    for _ in range(60):
        m = lo + (hi - lo) / 2
        p = pred(m)
        hi = np.where(p, m, hi)
        lo = np.where(p, lo, m)
    at_zero = pred(np.zeros_like(xs))
    lo = np.where(at_zero, 0.0, lo)
    hi = np.where(at_zero, 0.0, hi)
    v_hi = U.values(xs, hi)
    v_lo = U.values(xs, lo)
    v_next = U.values(xs, np.minimum(hi + LEVEL_STEP, 1.0))
    solvable = ok_hi & (np.abs(v_hi - e) <= cfg.eq_tol) & (v_lo >= e - cfg.jump_tol) & (v_next <= e + cfg.jump_tol)
    ys = snap(hi[solvable], anchor_set(U))
    return LevelPairs(xs[solvable], ys)


def e_band(U: Operator, grid: GridSpec | None = None, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> tuple[float, float]:
    """The pair (a, d): power limits of a representative solution of U(x, y) = e with x < e.

    When only the trivial solution (e, e) exists the band collapses to (e, e).
    """
    e = _neutral(U)
    grid = grid or GridSpec()
    xs = grid.points(U)
    pairs = level_pairs(U, xs[xs < e - cfg.eq_tol], cfg)
    if not len(pairs):
        return e, e
    k = len(pairs) // 2
    x, y = float(pairs.xs[k]), float(pairs.ys[k])
    return power_limit(U, x, cfg), power_limit(U, y, cfg)


def boundary_params(U: Operator, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> tuple[float, float]:
    """A = inf{x : U(x, 0) > 0} and B = inf{x : U(x, 1) = 1}, each 1 when the set is empty."""
    _neutral(U)
    zero, one = np.zeros(1), np.ones(1)
    A = bisect_predicate_array(lambda x: U.values(x, 0.0 * x) > cfg.eq_tol, zero, one, cfg.bisect_tol)
    B = bisect_predicate_array(lambda x: U.values(x, 0.0 * x + 1.0) >= 1.0 - cfg.eq_tol, zero, one, cfg.bisect_tol)
    anchors = anchor_set(U)
    return float(snap(A, anchors)[0]), float(snap(B, anchors)[0])
