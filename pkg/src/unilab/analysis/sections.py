"""Section profiles u_x(z) = U(x, z), jump detection and planar one-sided continuity.

All scans are vectorised over rows: a whole grid of sections is sampled in
one call, candidate cells (adjacent samples differing by more than
``jump_tol``) are refined together by gap bisection, and one-sided limits are
extrapolated from the halving offset schedule.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from ..axioms import GridSpec
from ..core import Operator
from ..errors import CarrierError
from ..intervals import Interval
from ..numerics import DEFAULT_TOLERANCES, ToleranceConfig


class SectionStatus(enum.Enum):
    Continuous = "continuous"
    OneJump = "one_jump"


class SideKind(enum.Enum):
    LeftContinuous = "left"
    RightContinuous = "right"
    Neither = "neither"


class SideContinuity(enum.Enum):
    Both = "both"
    LeftOnly = "left_only"
    RightOnly = "right_only"
    Neither = "neither"


@dataclass(frozen=True)
class Jump:
    x: float
    at: float
    left_limit: float
    right_limit: float
    value: float
    side: SideKind
    converged: bool = True

    @property
    def size(self) -> float:
        return self.right_limit - self.left_limit


@dataclass(frozen=True)
class SectionProfile:
    x: float
    status: SectionStatus
    jump_at: float | None = None
    left_limit: float | None = None
    right_limit: float | None = None
    value_at_jump: float | None = None
    side: SideKind | None = None
    range_gap: Interval | None = None
    jumps: tuple[Jump, ...] = ()

    @property
    def too_many_jumps(self) -> bool:
        """More than one jump: impossible for an operator whose underlying operations are continuous."""
        return len(self.jumps) > 1


def _full(U: Operator) -> None:
    if not U.is_full:
        raise CarrierError(f"section analysis needs a full-carrier operator, got {U.carrier}")


# -- vectorised primitives ---------------------------------------------------------


def _extrapolated(V: np.ndarray, cfg: ToleranceConfig) -> tuple[np.ndarray, np.ndarray]:
    """Richardson limit along the last axis of halving-offset samples."""
    ext = 2.0 * V[..., 1:] - V[..., :-1]
    tail = ext[..., -3:]
    conv = (tail.max(axis=-1) - tail.min(axis=-1)) <= cfg.eq_tol
    return ext[..., -1], conv


def path_limits(
    U: Operator, px, py, dx: float, dy: float, cfg: ToleranceConfig = DEFAULT_TOLERANCES
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Limits of U along (px + dx h, py + dy h) as h -> 0+.

    Returns (limit, converged, available); ``available`` is false where the
    path leaves the unit square at once (then ``limit`` is the value itself).
    """
    px = np.atleast_1d(np.asarray(px, dtype=float))
    py = np.atleast_1d(np.asarray(py, dtype=float))
    H = np.asarray(cfg.limit_offsets)
    X = px[:, None] + dx * H[None, :]
    Y = py[:, None] + dy * H[None, :]
    inside = (X >= 0) & (X <= 1) & (Y >= 0) & (Y <= 1)
    V = U.values(np.clip(X, 0, 1), np.clip(Y, 0, 1))
    lim, conv = _extrapolated(V, cfg)
    available = inside[:, -1]
    value = U.values(px, py)
    return np.where(available, lim, value), np.where(available, conv, True), available


def refine_gaps(fn, lo, hi, flo, fhi, tol: float, min_gap: float = 0.0):
    """Vectorised gap bisection: keep the half carrying the larger part of the jump.

    ``fn(k, m)`` evaluates the k-th bracketed function at points ``m``
    (``k`` is an index array into the brackets). Brackets whose gap falls to
    ``min_gap`` or below are dropped early: the function is continuous there.
    """
    lo, hi = np.array(lo, dtype=float), np.array(hi, dtype=float)
    flo, fhi = np.array(flo, dtype=float), np.array(fhi, dtype=float)
    for _ in range(80):
        width = hi - lo
        m = lo + width / 2
        active = (width > tol) & (m > lo) & (m < hi) & (np.abs(fhi - flo) > min_gap)
        if not np.any(active):
            break
        k = np.nonzero(active)[0]
        fm = np.asarray(fn(k, m[k]), dtype=float)
        go_left = np.abs(fm - flo[k]) >= np.abs(fhi[k] - fm)
        kl, kr = k[go_left], k[~go_left]
        hi[kl], fhi[kl] = m[kl], fm[go_left]
        lo[kr], flo[kr] = m[kr], fm[~go_left]
    return lo, hi, flo, fhi


def _refine_cells(U: Operator, x, lo, hi, vlo, vhi, cfg: ToleranceConfig):
    return refine_gaps(lambda k, m: U.values(x[k], m), lo, hi, vlo, vhi, cfg.bisect_tol, cfg.jump_tol)


def snap_locations(lo: np.ndarray, hi: np.ndarray, nodes: np.ndarray, cfg: ToleranceConfig) -> np.ndarray:
    """Snap refined jump brackets onto grid/anchor nodes when they enclose one."""
    idx = np.clip(np.searchsorted(nodes, hi), 1, len(nodes) - 1)
    left, right = nodes[idx - 1], nodes[idx]
    near = np.where(np.abs(right - hi) <= np.abs(left - hi), right, left)
    slack = 4 * cfg.bisect_tol
    ok = (near >= lo - slack) & (near <= hi + slack)
    return np.where(ok, near, hi)


# -- section scans -----------------------------------------------------------------


@dataclass
class SectionScan:
    """Profiles of every grid section plus the raw jump table."""

    U: Operator
    grid: np.ndarray
    values: np.ndarray
    profiles: list[SectionProfile]
    jumps: list[Jump]
    node_jumps: np.ndarray  # node_jumps[i, j]: section at grid[i] jumps at grid node j
    cfg: ToleranceConfig = field(default=DEFAULT_TOLERANCES)

    def profile_at(self, x: float) -> SectionProfile:
        i = int(np.argmin(np.abs(self.grid - x)))
        return self.profiles[i]

    def jump_points(self) -> list[tuple[float, float]]:
        return [(j.x, j.at) for j in self.jumps]


def _scan_rows(U: Operator, xs: np.ndarray, nodes: np.ndarray, cfg: ToleranceConfig):
    V = U.values(xs[:, None], nodes[None, :])
    D = np.diff(V, axis=1)
    ri, ci = np.nonzero(np.abs(D) > cfg.jump_tol)
    jumps: list[Jump] = []
    if ri.size:
        x = xs[ri]
        lo, hi, vlo, vhi = _refine_cells(U, x, nodes[ci], nodes[ci + 1], V[ri, ci], V[ri, ci + 1], cfg)
        real = np.abs(vhi - vlo) > cfg.jump_tol
        x, lo, hi, ri = x[real], lo[real], hi[real], ri[real]
        at = snap_locations(lo, hi, nodes, cfg)
        value = U.values(x, at)
        left, lconv, _ = path_limits(U, x, at, 0.0, -1.0, cfg)
        right, rconv, _ = path_limits(U, x, at, 0.0, 1.0, cfg)
        seen: set[tuple[int, float]] = set()
        for k in range(x.size):
            key = (int(ri[k]), round(float(at[k]), 9))
            if key in seen or not (right[k] - left[k] > cfg.jump_tol):
                continue
            seen.add(key)
            v, lft, rgt = float(value[k]), float(left[k]), float(right[k])
            if abs(v - lft) <= cfg.jump_tol:
                side = SideKind.LeftContinuous
            elif abs(v - rgt) <= cfg.jump_tol:
                side = SideKind.RightContinuous
            else:
                side = SideKind.Neither
            jumps.append(Jump(float(x[k]), float(at[k]), lft, rgt, v, side, bool(lconv[k] and rconv[k])))
    return V, jumps


def _profile(x: float, jumps: list[Jump], cfg: ToleranceConfig) -> SectionProfile:
    if not jumps:
        return SectionProfile(x, SectionStatus.Continuous)
    j = jumps[0]
    lo_open = abs(j.value - j.left_limit) <= cfg.jump_tol
    hi_open = abs(j.value - j.right_limit) <= cfg.jump_tol
    gap = None
    if j.right_limit > j.left_limit:
        gap = Interval(j.left_limit, j.right_limit, not lo_open, not hi_open)
    return SectionProfile(
        x,
        SectionStatus.OneJump,
        jump_at=j.at,
        left_limit=j.left_limit,
        right_limit=j.right_limit,
        value_at_jump=j.value,
        side=j.side,
        range_gap=gap,
        jumps=tuple(jumps),
    )


def scan_sections(U: Operator, grid: GridSpec | None = None, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> SectionScan:
    _full(U)
    grid = grid or GridSpec()
    nodes = grid.points(U)
    V, jumps = _scan_rows(U, nodes, nodes, cfg)
    per_row: dict[float, list[Jump]] = {}
    for j in jumps:
        per_row.setdefault(j.x, []).append(j)
    profiles = [_profile(float(x), sorted(per_row.get(float(x), []), key=lambda j: j.at), cfg) for x in nodes]
    node_jumps = np.zeros((nodes.size, nodes.size), dtype=bool)
    index = {float(v): i for i, v in enumerate(nodes)}
    for j in jumps:
        jj = index.get(j.at)
        if jj is not None:
            node_jumps[index[j.x], jj] = True
    return SectionScan(U, nodes, V, profiles, jumps, node_jumps, cfg)


def section_profile(
    U: Operator, x: float, grid: GridSpec | None = None, cfg: ToleranceConfig = DEFAULT_TOLERANCES
) -> SectionProfile:
    _full(U)
    grid = grid or GridSpec()
    nodes = grid.points(U)
    _, jumps = _scan_rows(U, np.array([float(x)]), nodes, cfg)
    return _profile(float(x), sorted(jumps, key=lambda j: j.at), cfg)


class ContinuityResult(NamedTuple):
    continuous: bool
    witness: tuple[float, float] | None
    jump: float = 0.0


def continuity_scan(op: Operator, grid: GridSpec | None = None, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> ContinuityResult:
    """Joint continuity on the grid from axis-aligned section checks.

    Separate continuity of monotone sections implies joint continuity, so
    rows suffice; by commutativity the columns are the transposed rows.
    The witness is the largest detected jump (ties go to the larger x).
    """
    scan = scan_sections(op, grid, cfg)
    if not scan.jumps:
        return ContinuityResult(True, None)
    best = max(scan.jumps, key=lambda j: (round(j.size, 12), j.x))
    return ContinuityResult(False, (best.x, best.at), best.size)


CLUSTER_STEP = 2.0 ** -20


# -- discontinuity set ---------------------------------------------------------------


@dataclass
class DiscontinuitySet:
    points: list[tuple[float, float]]
    resolution_limited: list[tuple[float, float]]

    def __len__(self) -> int:
        return len(self.points)

    def as_array(self) -> np.ndarray:
        return np.array(self.points, dtype=float).reshape(-1, 2)


def discontinuity_points(
    U: Operator,
    grid: GridSpec | None = None,
    cfg: ToleranceConfig = DEFAULT_TOLERANCES,
    scan: SectionScan | None = None,
) -> DiscontinuitySet:
    """Grid-resolution outer approximation of the discontinuity set.

    Axis jumps come from the section scan and its transpose. A point whose
    own sections are continuous is added (flagged resolution-limited) when
    the neighbouring grid section jumps exactly there and sections arbitrarily
    close on that side jump there too, i.e. it is a limit of jump points.
    Points where U equals its neutral element are excluded from that rule.
    """
    scan = scan or scan_sections(U, grid, cfg)
    pts = set()
    for j in scan.jumps:
        pts.add((j.x, j.at))
        pts.add((j.at, j.x))
    J = scan.node_jumps
    direct = J | J.T
    # candidates: the grid row above (+1) or below (-1) jumps exactly at this node
    up = np.zeros_like(J)
    down = np.zeros_like(J)
    up[:-1, :] = J[1:, :]
    down[1:, :] = J[:-1, :]
    cand = (up | down) & ~direct
    if U.neutral is not None:
        cand &= np.abs(scan.values - U.neutral) > cfg.eq_tol
    g = scan.grid
    limited: list[tuple[float, float]] = []
    ii, kk = np.nonzero(cand)
    if ii.size:
        # keep a candidate only if sections just beside it, towards the jumping row, still jump there
        step = np.where(up[ii, kk], 1.0, -1.0) * CLUSTER_STEP
        xs = np.clip(g[ii] + step, 0.0, 1.0)
        lo, _, _ = path_limits(U, xs, g[kk], 0.0, -1.0, cfg)
        hi, _, _ = path_limits(U, xs, g[kk], 0.0, 1.0, cfg)
        keep = (hi - lo) > cfg.jump_tol
        for i, k in zip(ii[keep], kk[keep]):
            for p in ((float(g[i]), float(g[k])), (float(g[k]), float(g[i]))):
                if p not in pts:
                    limited.append(p)
    limited = sorted(set(limited))
    pts.update(limited)
    return DiscontinuitySet(sorted(pts), limited)


# -- planar one-sided continuity ------------------------------------------------------

_LOWER_LEFT = ((-1.0, 0.0), (0.0, -1.0), (-1.0, -1.0))
_UPPER_RIGHT = ((1.0, 0.0), (0.0, 1.0), (1.0, 1.0))
_MIXED = ((1.0, -1.0), (-1.0, 1.0))


def quadrant_deviations(U: Operator, xs, ys, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> tuple[np.ndarray, np.ndarray]:
    """Worst |limit - value| over the lower-left and the upper-right approach paths."""
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    ys = np.atleast_1d(np.asarray(ys, dtype=float))
    value = U.values(xs, ys)
    out = []
    for dirs in (_LOWER_LEFT, _UPPER_RIGHT):
        dev = np.zeros_like(value)
        for dx, dy in dirs:
            lim, _, avail = path_limits(U, xs, ys, dx, dy, cfg)
            dev = np.maximum(dev, np.where(avail, np.abs(lim - value), 0.0))
        out.append(dev)
    return out[0], out[1]


def classify_sides(left_dev: np.ndarray, right_dev: np.ndarray, cfg: ToleranceConfig) -> list[SideContinuity]:
    res = []
    for l, r in zip(np.atleast_1d(left_dev), np.atleast_1d(right_dev)):
        lok, rok = l <= cfg.jump_tol, r <= cfg.jump_tol
        if lok and rok:
            res.append(SideContinuity.Both)
        elif lok:
            res.append(SideContinuity.LeftOnly)
        elif rok:
            res.append(SideContinuity.RightOnly)
        else:
            res.append(SideContinuity.Neither)
    return res


def side_continuity(U: Operator, x: float, y: float, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> SideContinuity:
    _full(U)
    ld, rd = quadrant_deviations(U, [x], [y], cfg)
    return classify_sides(ld, rd, cfg)[0]


def planar_continuous(U: Operator, x: float, y: float, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> tuple[bool, float]:
    """Continuity at (x, y) along the eight axis and diagonal directions; returns (ok, worst deviation)."""
    value = float(U.values(x, y))
    worst = 0.0
    for dx, dy in _LOWER_LEFT + _UPPER_RIGHT + _MIXED:
        lim, _, avail = path_limits(U, [x], [y], dx, dy, cfg)
        if avail[0]:
            worst = max(worst, abs(float(lim[0]) - value))
    return worst <= cfg.jump_tol, worst
