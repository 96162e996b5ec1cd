"""The characterizing set-valued function r : [0, 1] -> intervals and its checks.

r is assembled from the two level thresholds

    t_ge(x) = inf{y : U(x, y) >= e},    t_gt(x) = inf{y : U(x, y) > e}

as r(x) = [min(t_ge(x), t_ge(x+)), max(t_gt(x), t_gt(x-))]. Between
breakpoints r is either constant or a continuous curve; at breakpoints it
may be a vertical segment.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..axioms import GridSpec
from ..core import Operator, ValidationReport
from ..errors import ClassError
from ..intervals import Interval
from ..numerics import DEFAULT_TOLERANCES, ToleranceConfig
from .sections import continuity_scan, discontinuity_points, refine_gaps, snap_locations
from .structure import anchor_set, boundary_params, e_band, snap, thresholds, underlying_ops

SIDE_STEP = 2.0 ** -30
CurveFn = Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]]


@dataclass(frozen=True)
class SVFPiece:
    """r restricted to ``domain``: a constant interval ``image`` or a ``curve`` callable."""

    domain: Interval
    image: Interval | None = None
    curve: CurveFn | None = field(default=None, compare=False)
    label: str = ""

    def __post_init__(self):
        if (self.image is None) == (self.curve is None):
            raise ValueError("a piece has exactly one of image and curve")

    @property
    def is_curve(self) -> bool:
        return self.curve is not None

    def bounds(self, xs) -> tuple[np.ndarray, np.ndarray]:
        xs = np.atleast_1d(np.asarray(xs, dtype=float))
        if self.curve is None:
            return np.full(xs.shape, self.image.lo), np.full(xs.shape, self.image.hi)
        lo, hi = self.curve(xs)
        return np.minimum(lo, hi), np.maximum(lo, hi)

    def closure_bounds(self, x: float) -> tuple[float, float]:
        """Image at an endpoint of the domain, approached from inside."""
        d = self.domain
        if not d.is_singleton:
            x = min(max(x, d.lo + SIDE_STEP), d.hi - SIDE_STEP)
        lo, hi = self.bounds([x])
        return float(lo[0]), float(hi[0])

    def describe(self) -> str:
        what = "curve" if self.is_curve else str(self.image)
        return f"{self.domain} -> {what}" + (f" [{self.label}]" if self.label else "")


@dataclass
class SetValuedFunction:
    pieces: list[SVFPiece]
    params: dict = field(default_factory=dict)

    def bounds(self, xs) -> tuple[np.ndarray, np.ndarray]:
        """Lower and upper end of r(x); NaN where r(x) is empty."""
        xs = np.atleast_1d(np.asarray(xs, dtype=float))
        lo = np.full(xs.shape, np.nan)
        hi = np.full(xs.shape, np.nan)
        for p in self.pieces:
            m = p.domain.contains_array(xs)
            if np.any(m):
                plo, phi = p.bounds(xs[m])
                lo[m] = np.fmin(lo[m], plo)
                hi[m] = np.fmax(hi[m], phi)
        return lo, hi

    def __call__(self, x: float) -> Interval | None:
        lo, hi = self.bounds([x])
        if np.isnan(lo[0]):
            return None
        return Interval(float(lo[0]), float(hi[0]))

    # -- graph geometry --------------------------------------------------------

    def _geometry(self, density: int = 1024):
        boxes, segs = [], []
        for p in self.pieces:
            d = p.domain
            if p.curve is None:
                boxes.append((d.lo, d.hi, p.image.lo, p.image.hi))
                continue
            a, b = d.lo, d.hi
            if not d.is_singleton:
                a, b = a + SIDE_STEP, b - SIDE_STEP
            m = max(33, int(np.ceil((b - a) * density)) + 1)
            xs = np.linspace(a, b, m)
            knots = getattr(p.curve, "knots", np.empty(0))
            xs = np.union1d(xs, knots[(knots > a) & (knots < b)])
            lo, hi = p.bounds(xs)
            boxes.extend(zip(xs, xs, lo, hi))
            mid = (lo + hi) / 2
            segs.extend(zip(xs[:-1], mid[:-1], xs[1:], mid[1:]))
        return np.array(boxes, dtype=float).reshape(-1, 4), np.array(segs, dtype=float).reshape(-1, 4)

    def graph_distance(self, points) -> np.ndarray:
        """Euclidean distance from each point to the graph G(r)."""
        P = np.asarray(points, dtype=float).reshape(-1, 2)
        if not hasattr(self, "_geo"):
            self._geo = self._geometry()
        boxes, segs = self._geo
        best = np.full(len(P), np.inf)
        px, py = P[:, :1], P[:, 1:]
        for chunk in np.array_split(np.arange(len(boxes)), max(1, len(boxes) // 4096)):
            B = boxes[chunk]
            dx = np.maximum(np.maximum(B[None, :, 0] - px, px - B[None, :, 1]), 0.0)
            dy = np.maximum(np.maximum(B[None, :, 2] - py, py - B[None, :, 3]), 0.0)
            best = np.minimum(best, np.hypot(dx, dy).min(axis=1))
        if len(segs):
            x0, y0, x1, y1 = (segs[None, :, k] for k in range(4))
            vx, vy = x1 - x0, y1 - y0
            L = vx * vx + vy * vy
            t = np.clip(((px - x0) * vx + (py - y0) * vy) / np.where(L > 0, L, 1.0), 0.0, 1.0)
            d = np.hypot(px - (x0 + t * vx), py - (y0 + t * vy))
            best = np.minimum(best, d.min(axis=1))
        return best

    def describe(self) -> str:
        return "\n".join(p.describe() for p in self.pieces)


# -- construction ----------------------------------------------------------------


class _Curve:
    """r on a continuous stretch: [t_ge(x), t_gt(x)]."""

    def __init__(self, U: Operator, cfg: ToleranceConfig, knots=()):
        self.U, self.cfg = U, cfg
        self.knots = np.asarray(sorted(knots), dtype=float)

    def __call__(self, xs):
        return thresholds(self.U, xs, self.cfg)


def _threshold_breaks(U: Operator, nodes: np.ndarray, cfg: ToleranceConfig) -> list[float]:
    t_ge, t_gt = thresholds(U, nodes, cfg)
    out: list[float] = []
    for t, which in ((t_ge, 0), (t_gt, 1)):
        idx = np.nonzero(np.abs(np.diff(t)) > cfg.jump_tol)[0]
        if idx.size == 0:
            continue
        fn = lambda k, m, w=which: thresholds(U, m, cfg)[w]  # noqa: E731
        lo, hi, flo, fhi = refine_gaps(fn, nodes[idx], nodes[idx + 1], t[idx], t[idx + 1], cfg.bisect_tol, cfg.jump_tol)
        real = np.abs(fhi - flo) > cfg.jump_tol
        # the eq_tol margin in the thresholds shifts breaks by about eq_tol
        out.extend(snap(snap_locations(lo[real], hi[real], nodes, cfg), nodes, 10 * cfg.eq_tol).tolist())
    return out


def _point_image(U: Operator, b: float, cfg: ToleranceConfig) -> Interval:
    pts = np.array([b, min(b + SIDE_STEP, 1.0), max(b - SIDE_STEP, 0.0)])
    ge, gt = thresholds(U, pts, cfg)
    ge_right = ge[1] if b < 1.0 else 0.0
    gt_left = gt[2] if b > 0.0 else 1.0
    lo, hi = min(ge[0], ge_right), max(gt[0], gt_left)
    anchors = anchor_set(U)
    lo, hi = snap([lo, hi], anchors)
    return Interval(float(min(lo, hi)), float(max(lo, hi)))


def _label(p: SVFPiece) -> str:
    d = p.domain
    if d.is_singleton and d.lo == 0.0:
        return "left_edge"
    if d.is_singleton and d.lo == 1.0:
        return "right_edge"
    if p.is_curve:
        return "level"
    if p.image.is_singleton and p.image.lo == 1.0:
        return "top"
    if p.image.is_singleton and p.image.lo == 0.0:
        return "bottom"
    if d.is_singleton:
        return "jump"
    return "plateau"


def _same_image(a: Interval, b: Interval, tol: float) -> bool:
    return abs(a.lo - b.lo) <= tol and abs(a.hi - b.hi) <= tol


def _merge(pieces: list[SVFPiece], tol: float) -> list[SVFPiece]:
    out: list[SVFPiece] = []
    for p in pieces:
        if out:
            q = out[-1]
            joined = Interval(q.domain.lo, p.domain.hi, q.domain.lo_closed, p.domain.hi_closed)
            merged = None
            if q.curve is None and p.curve is None and _same_image(q.image, p.image, tol):
                merged = SVFPiece(joined, image=q.image)
            elif q.is_curve and p.is_curve:
                merged = SVFPiece(joined, curve=q.curve)
            elif q.is_curve and p.domain.is_singleton:
                lo, hi = q.closure_bounds(p.domain.lo)
                if _same_image(Interval(lo, hi), p.image, tol):
                    merged = SVFPiece(joined, curve=q.curve)
            elif p.is_curve and q.domain.is_singleton:
                lo, hi = p.closure_bounds(q.domain.lo)
                if _same_image(Interval(lo, hi), q.image, tol):
                    merged = SVFPiece(joined, curve=p.curve)
            if merged is not None:
                out[-1] = merged
                continue
        out.append(p)
    return [SVFPiece(p.domain, p.image, p.curve, _label(p)) for p in out]


def characterizing_svf(
    U: Operator,
    grid: GridSpec | None = None,
    cfg: ToleranceConfig = DEFAULT_TOLERANCES,
    strict: bool = True,
) -> SetValuedFunction:
    """Build r for U. With ``strict`` the underlying operations must be continuous."""
    grid = grid or GridSpec()
    if strict:
        T, S = underlying_ops(U)
        for name, op in (("t-norm", T), ("t-conorm", S)):
            res = continuity_scan(op, GridSpec(grid.n), cfg)
            if not res.continuous:
                raise ClassError(f"underlying {name} is not continuous (jump near {res.witness})")
    e = float(U.neutral)
    A, B = boundary_params(U, cfg)
    a, d = e_band(U, grid, cfg)
    nodes = grid.points(U)
    breaks = sorted({0.0, 1.0, e, A, B, a, d, *_threshold_breaks(U, nodes, cfg)})
    dedup = [breaks[0]]
    for b in breaks[1:]:
        if b - dedup[-1] > 1e-9:
            dedup.append(b)
    anchors = anchor_set(U, A, B, a, d)
    curve = _Curve(U, cfg, anchors)
    pieces: list[SVFPiece] = []
    for i, b in enumerate(dedup):
        pieces.append(SVFPiece(Interval.point(b), image=_point_image(U, b, cfg)))
        if i + 1 == len(dedup):
            break
        c = dedup[i + 1]
        inner = nodes[(nodes > b + 1e-9) & (nodes < c - 1e-9)]
        xs = np.concatenate([inner, [(b + c) / 2]])
        lo, hi = thresholds(U, xs, cfg)
        lo, hi = np.minimum(lo, hi), np.maximum(lo, hi)
        dom = Interval(b, c, False, False)
        if np.ptp(lo) <= cfg.jump_tol and np.ptp(hi) <= cfg.jump_tol:
            ilo, ihi = snap([np.median(lo), np.median(hi)], anchors)
            pieces.append(SVFPiece(dom, image=Interval(float(ilo), float(ihi))))
        else:
            pieces.append(SVFPiece(dom, curve=curve))
    params = {"e": e, "A": A, "B": B, "a": a, "d": d}
    return SetValuedFunction(_merge(pieces, cfg.jump_tol), params)


# -- validation ----------------------------------------------------------------------


def _connected(intervals: list[tuple[float, float]], tol: float) -> bool:
    iv = sorted(intervals)
    reach = iv[0][1]
    for lo, hi in iv[1:]:
        if lo > reach + tol:
            return False
        reach = max(reach, hi)
    return True


def validate_svf(
    r: SetValuedFunction,
    U: Operator | None = None,
    grid: GridSpec | None = None,
    cfg: ToleranceConfig = DEFAULT_TOLERANCES,
    discontinuities=None,
) -> ValidationReport:
    """Check the defining properties of a characterizing function on a sample grid.

    Non-empty values, symmetry of the graph, non-increasing, (0, 1) and
    (1, 0) in the graph, connected images at breakpoints and, when ``U`` is
    given, that every detected discontinuity lies within one grid cell of the
    graph.
    """
    grid = grid or GridSpec()
    xs = grid.points(U) if U is not None else np.unique(np.concatenate([np.linspace(0, 1, grid.n), [0.0, 1.0]]))
    rep = ValidationReport("set-valued function")
    lo, hi = r.bounds(xs)
    empty = np.isnan(lo)
    if np.any(empty):
        idx = np.nonzero(empty)[0]
        run_end = idx[0]
        while run_end + 1 < len(xs) and empty[run_end + 1]:
            run_end += 1
        centre = (xs[idx[0]] + xs[run_end]) / 2
        run = xs[idx[0]: run_end + 1]
        rep.add("r(x) is empty", float(run[np.argmin(np.abs(run - centre))]))
    ok = ~empty
    xo, lo_o, hi_o = xs[ok], lo[ok], hi[ok]
    tol = cfg.jump_tol

    # symmetry of the graph
    pts = np.concatenate([np.column_stack([xo, lo_o]), np.column_stack([xo, hi_o])])
    mirror = pts[:, ::-1]
    dist = r.graph_distance(mirror)
    bad = np.nonzero(dist > tol)[0]
    if bad.size:
        k = bad[np.argmax(dist[bad])]
        rep.add(f"graph not symmetric (mirror at distance {dist[k]:.3g})", float(pts[k, 0]), float(pts[k, 1]))

    # non-increasing
    drop = lo_o[:-1] - hi_o[1:]
    bad = np.nonzero(drop < -tol)[0]
    if bad.size:
        k = bad[0]
        rep.add("r is not non-increasing", float(xo[k]), float(xo[k + 1]))

    for p in ((0.0, 1.0), (1.0, 0.0)):
        if r.graph_distance([p])[0] > tol:
            rep.add("graph misses a corner point", *p)

    # connectivity at breakpoints
    ends = sorted({e for p in r.pieces for e in (p.domain.lo, p.domain.hi)})
    for b in ends:
        iv = []
        for p in r.pieces:
            d = p.domain
            if d.contains(b) or abs(d.lo - b) <= 1e-12 or abs(d.hi - b) <= 1e-12:
                iv.append(p.closure_bounds(b))
        if iv and not _connected(iv, tol):
            rep.add("images at a breakpoint are not connected", float(b))

    if U is not None:
        D = discontinuities if discontinuities is not None else discontinuity_points(U, grid, cfg)
        P = D.as_array() if hasattr(D, "as_array") else np.asarray(D, dtype=float).reshape(-1, 2)
        if len(P):
            cell = 1.0 / (grid.n - 1) + 1e-12
            dist = r.graph_distance(P)
            far = np.nonzero(dist > cell)[0]
            if far.size:
                k = far[np.argmax(dist[far])]
                rep.add(f"{far.size} discontinuity points lie off the graph", float(P[k, 0]), float(P[k, 1]))
            rep.info["max_cover_distance"] = float(dist.max())
    return rep


def constant_svf(pieces: list[tuple[Interval, Interval]]) -> SetValuedFunction:
    """An r given by constant images, for hand-written characterizing functions."""
    return SetValuedFunction([SVFPiece(d, image=i) for d, i in pieces])
