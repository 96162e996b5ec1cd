"""Intervals and finite unions of intervals inside [0, 1]."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .errors import CarrierError, ParameterError


def nice_number(x: float, max_den: int = 1000, tol: float = 1e-12) -> str:
    """Render ``x`` as a short fraction when it is one (1/3 rather than 0.333...)."""
    if x == int(x):
        return str(int(x))
    fr = Fraction(x).limit_denominator(max_den)
    if abs(float(fr) - x) <= tol:
        return f"{fr.numerator}/{fr.denominator}"
    return f"{x:.12g}"


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if not (0.0 <= lo <= hi <= 1.0):
            raise ParameterError(f"interval endpoints must satisfy 0 <= lo <= hi <= 1, got [{lo}, {hi}]")
        if lo == hi and not (self.lo_closed and self.hi_closed):
            raise ParameterError("a degenerate interval must be a closed singleton")

    @classmethod
    def closed(cls, lo: float, hi: float) -> "Interval":
        return cls(lo, hi, True, True)

    @classmethod
    def point(cls, x: float) -> "Interval":
        return cls(x, x, True, True)

    @property
    def is_singleton(self) -> bool:
        return self.lo == self.hi

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float, tol: float = 0.0) -> bool:
        if self.lo_closed or tol > 0:
            left = x >= self.lo - tol
        else:
            left = x > self.lo
        if self.hi_closed or tol > 0:
            right = x <= self.hi + tol
        else:
            right = x < self.hi
        return bool(left and right)

    def contains_array(self, x: np.ndarray) -> np.ndarray:
        left = x >= self.lo if self.lo_closed else x > self.lo
        right = x <= self.hi if self.hi_closed else x < self.hi
        return left & right

    def distance(self, x: float) -> float:
        """Distance from ``x`` to the closure."""
        if x < self.lo:
            return self.lo - x
        if x > self.hi:
            return x - self.hi
        return 0.0

    def affine_to(self, t):
        """Map [0, 1] onto this interval."""
        return self.lo + (self.hi - self.lo) * t

    def affine_from(self, x):
        """Map this interval back onto [0, 1]."""
        return (x - self.lo) / (self.hi - self.lo)

    def __str__(self) -> str:
        if self.is_singleton:
            return "{" + nice_number(self.lo) + "}"
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{nice_number(self.lo)}, {nice_number(self.hi)}{right}"


UNIT = Interval(0.0, 1.0)


def _touch_merge(a: Interval, b: Interval) -> Interval | None:
    """Union of two sorted intervals if it is itself an interval."""
    if b.lo < a.hi or (b.lo == a.hi and (a.hi_closed or b.lo_closed)):
        if b.hi > a.hi:
            hi, hi_closed = b.hi, b.hi_closed
        elif b.hi < a.hi:
            hi, hi_closed = a.hi, a.hi_closed
        else:
            hi, hi_closed = a.hi, a.hi_closed or b.hi_closed
        if a.lo == b.lo:
            lo_closed = a.lo_closed or b.lo_closed
        else:
            lo_closed = a.lo_closed
        return Interval(a.lo, hi, lo_closed, hi_closed)
    return None


@dataclass(frozen=True)
class CarrierSet:
    parts: tuple[Interval, ...]

    def __init__(self, parts: Iterable[Interval]):
        items = sorted(parts, key=lambda iv: (iv.lo, not iv.lo_closed, iv.hi))
        merged: list[Interval] = []
        for iv in items:
            if merged:
                joined = _touch_merge(merged[-1], iv)
                if joined is not None:
                    merged[-1] = joined
                    continue
            merged.append(iv)
        if not merged:
            raise ParameterError("a carrier needs at least one part")
        object.__setattr__(self, "parts", tuple(merged))

    @classmethod
    def unit(cls) -> "CarrierSet":
        return cls([UNIT])

    @classmethod
    def of(cls, *parts: Interval) -> "CarrierSet":
        return cls(parts)

    @property
    def is_full(self) -> bool:
        return len(self.parts) == 1 and self.parts[0] == UNIT

    @property
    def lo(self) -> float:
        return self.parts[0].lo

    @property
    def hi(self) -> float:
        return self.parts[-1].hi

    def endpoints(self) -> list[float]:
        pts = set()
        for iv in self.parts:
            pts.add(iv.lo)
            pts.add(iv.hi)
        return sorted(pts)

    def contains(self, x: float, tol: float = 0.0) -> bool:
        return any(iv.contains(x, tol) for iv in self.parts)

    def contains_array(self, x: np.ndarray) -> np.ndarray:
        out = np.zeros(np.shape(x), dtype=bool)
        for iv in self.parts:
            out |= iv.contains_array(x)
        return out

    def snap(self, x: float, tol: float) -> float:
        """Return ``x`` if it is a member, else the nearest closure point within ``tol``."""
        if self.contains(x):
            return float(x)
        best = None
        for iv in self.parts:
            d = iv.distance(x)
            if d <= tol and (best is None or d < best[0]):
                best = (d, min(iv.hi, max(iv.lo, x)))
        if best is None:
            raise CarrierError(f"{x!r} is outside the carrier {self}")
        return float(best[1])

    def snap_array(self, x: np.ndarray, tol: float) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        inside = self.contains_array(x)
        if np.all(inside):
            return x
        out = x.copy()
        fixed = inside.copy()
        for iv in self.parts:
            clamped = np.clip(x, iv.lo, iv.hi)
            near = ~fixed & (np.abs(clamped - x) <= tol)
            out = np.where(near, clamped, out)
            fixed |= near
        if not np.all(fixed):
            bad = x[~fixed].flat[0]
            raise CarrierError(f"{float(bad)!r} is outside the carrier {self}")
        return out

    def intersection_points(self, other: "CarrierSet") -> tuple[list[float], bool]:
        """Common points of two carriers: (shared isolated points, overlaps_in_interval)."""
        points: list[float] = []
        overlap = False
        for a in self.parts:
            for b in other.parts:
                lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
                if lo < hi:
                    overlap = True
                elif lo == hi and a.contains(lo) and b.contains(lo):
                    points.append(lo)
        return sorted(set(points)), overlap

    def __str__(self) -> str:
        return " u ".join(str(iv) for iv in self.parts)

