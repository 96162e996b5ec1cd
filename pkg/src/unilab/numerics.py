"""Tolerance-aware scalar foundations.

Everything here is pure. Array variants accept numpy arrays and broadcast; the
scalar variants are thin wrappers used by the public API and by tests.
"""

from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import DomainError, IndeterminateSum, NonMonotoneDetected

ScalarFn = Callable[[float], float]


@dataclass(frozen=True)
class ToleranceConfig:
    eq_tol: float = 1e-9
    jump_tol: float = 1e-4
    bisect_tol: float = 1e-12
    limit_k_min: int = 8
    limit_k_max: int = 30

    def __post_init__(self):
        for name in ("eq_tol", "jump_tol", "bisect_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")
        if not self.bisect_tol <= self.eq_tol <= self.jump_tol:
            raise ValueError("tolerances must satisfy bisect_tol <= eq_tol <= jump_tol")
        if not 1 <= self.limit_k_min < self.limit_k_max <= 52:
            raise ValueError("limit schedule must satisfy 1 <= k_min < k_max <= 52")

    @property
    def limit_offsets(self) -> tuple[float, ...]:
        """Geometric schedule h_k = 2**-k, coarse to fine."""
        return tuple(2.0 ** -k for k in range(self.limit_k_min, self.limit_k_max + 1))


DEFAULT_TOLERANCES = ToleranceConfig()


def approx_eq(x: float, y: float, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> bool:
    return abs(x - y) <= cfg.eq_tol


def unit_value(x: float, cfg: ToleranceConfig = DEFAULT_TOLERANCES, clamp: bool = True) -> float:
    """Validate a point of [0, 1].

    Values inside the ``eq_tol`` collar around the interval are clamped onto it;
    anything further out raises :class:`DomainError`. With ``clamp=False`` the
    collar is not tolerated either.
    """
    x = float(x)
    if math.isnan(x):
        raise DomainError("NaN is not a unit value")
    collar = cfg.eq_tol if clamp else 0.0
    if x < -collar or x > 1.0 + collar:
        raise DomainError(f"{x!r} lies outside [0, 1]")
    return min(1.0, max(0.0, x))


# -- extended reals -----------------------------------------------------------


class InfinityConvention(enum.Enum):
    """How an indeterminate (+inf) + (-inf) resolves."""

    SumIsPlusInfinity = "disjunctive"
    SumIsMinusInfinity = "conjunctive"

    @property
    def infinite_sum(self) -> float:
        return math.inf if self is InfinityConvention.SumIsPlusInfinity else -math.inf


def ext_add(a: float, b: float, convention: InfinityConvention | None = None) -> float:
    """Add two extended reals; the indeterminate form needs an explicit convention."""
    if math.isinf(a) and math.isinf(b) and (a > 0) != (b > 0):
        if convention is None:
            raise IndeterminateSum("(+inf) + (-inf) needs an InfinityConvention")
        return convention.infinite_sum
    return a + b


def ext_add_array(a: np.ndarray, b: np.ndarray, convention: InfinityConvention | None = None) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    clash = np.isinf(a) & np.isinf(b) & (np.sign(a) != np.sign(b))
    if np.any(clash) and convention is None:
        raise IndeterminateSum("(+inf) + (-inf) needs an InfinityConvention")
    with np.errstate(invalid="ignore"):
        out = a + b
    if convention is not None:
        out = np.where(clash, convention.infinite_sum, out)
    return out


# -- monotone inversion -------------------------------------------------------


class Direction(enum.Enum):
    Increasing = "increasing"
    Decreasing = "decreasing"


def _bisect_steps(lo: float, hi: float, tol: float) -> int:
    width = max(hi - lo, tol)
    return int(math.ceil(math.log2(width / tol))) + 2


def monotone_inverse(
    f: ScalarFn,
    target: float,
    lo: float,
    hi: float,
    direction: Direction,
    cfg: ToleranceConfig = DEFAULT_TOLERANCES,
) -> float:
    """Invert a monotone function on ``[lo, hi]`` by bisection.

    Targets beyond the range of ``f`` clamp to the matching endpoint, which
    gives the pseudo-inverse semantics needed by additive generators.
    """
    sign = 1.0 if direction is Direction.Increasing else -1.0
    f_lo, f_hi = sign * f(lo), sign * f(hi)
    t = sign * target
    if f_lo > f_hi + cfg.eq_tol:
        raise NonMonotoneDetected(
            f"f({lo})={sign * f_lo} and f({hi})={sign * f_hi} contradict {direction.value} direction"
        )
    if t <= f_lo:
        return lo
    if t >= f_hi:
        return hi
    a, b = lo, hi
    for _ in range(_bisect_steps(lo, hi, cfg.bisect_tol)):
        if b - a <= cfg.bisect_tol:
            break
        m = a + (b - a) / 2
        fm = sign * f(m)
        if fm < f_lo - cfg.eq_tol or fm > f_hi + cfg.eq_tol:
            raise NonMonotoneDetected(f"value at {m} leaves the bracket of a {direction.value} function")
        if fm < t:
            a, f_lo = m, fm
        else:
            b, f_hi = m, fm
    return a + (b - a) / 2


def monotone_inverse_array(
    f: Callable[[np.ndarray], np.ndarray],
    targets: np.ndarray,
    lo: float,
    hi: float,
    direction: Direction,
    cfg: ToleranceConfig = DEFAULT_TOLERANCES,
) -> np.ndarray:
    """Vectorised :func:`monotone_inverse` (no monotonicity diagnostics)."""
    t = np.asarray(targets, dtype=float)
    sign = 1.0 if direction is Direction.Increasing else -1.0
    f_lo = sign * float(f(np.array(lo)))
    f_hi = sign * float(f(np.array(hi)))
    st = sign * t
    a = np.full(t.shape, lo, dtype=float)
    b = np.full(t.shape, hi, dtype=float)
    for _ in range(_bisect_steps(lo, hi, cfg.bisect_tol)):
        m = a + (b - a) / 2
        with np.errstate(all="ignore"):
            fm = sign * f(m)
        below = fm < st
        a = np.where(below, m, a)
        b = np.where(below, b, m)
    out = a + (b - a) / 2
    out = np.where(st <= f_lo, lo, out)
    out = np.where(st >= f_hi, hi, out)
    return out


def bisect_predicate(pred: Callable[[float], bool], lo: float, hi: float, tol: float) -> float:
    """Locate the switch point of a monotone predicate false-then-true on ``[lo, hi]``.

    Returns ``lo`` if the predicate already holds at ``lo`` and ``hi`` if it
    never holds.
    """
    if pred(lo):
        return lo
    if not pred(hi):
        return hi
    a, b = lo, hi
    while b - a > tol:
        m = a + (b - a) / 2
        if m <= a or m >= b:
            break
        if pred(m):
            b = m
        else:
            a = m
    return b


def bisect_predicate_array(
    pred: Callable[[np.ndarray], np.ndarray], lo: np.ndarray, hi: np.ndarray, tol: float
) -> np.ndarray:
    """Vectorised :func:`bisect_predicate`; ``pred`` maps an array of points to booleans."""
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    lo, hi = np.broadcast_arrays(lo, hi)
    at_lo = pred(lo)
    at_hi = pred(hi)
    a, b = lo.copy(), hi.copy()
    steps = _bisect_steps(0.0, float(np.max(hi - lo)) if hi.size else 1.0, tol)
    for _ in range(steps):
        m = a + (b - a) / 2
        p = pred(m)
        b = np.where(p, m, b)
        a = np.where(p, a, m)
    out = np.where(at_lo, lo, np.where(at_hi, b, hi))
    return out


# -- one-sided limits ---------------------------------------------------------


class Side(enum.Enum):
    FromBelow = "below"
    FromAbove = "above"


class LimitEstimate(NamedTuple):
    value: float
    converged: bool


def extrapolate(samples: list[float], cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> LimitEstimate:
    """Richardson-extrapolate samples taken at halving offsets.

    A sample sequence s_k = g(p + h_k) with h_{k+1} = h_k / 2 and linear
    local behaviour has limit 2 s_{k+1} - s_k; step functions pass unchanged.
    """
    if not samples:
        raise ValueError("no samples")
    if len(samples) == 1:
        return LimitEstimate(samples[0], False)
    ext = [2.0 * b - a for a, b in zip(samples, samples[1:])]
    if any(math.isinf(v) or math.isnan(v) for v in samples[-3:]):
        return LimitEstimate(samples[-1], False)
    tail = ext[-3:]
    converged = len(tail) == 3 and max(tail) - min(tail) <= cfg.eq_tol
    return LimitEstimate(ext[-1], converged)


def one_sided_limit(
    g: ScalarFn, p: float, side: Side, cfg: ToleranceConfig = DEFAULT_TOLERANCES
) -> LimitEstimate:
    """Estimate lim g(t) as t -> p from one side, sampling inside [0, 1] only."""
    sign = -1.0 if side is Side.FromBelow else 1.0
    samples = []
    for h in cfg.limit_offsets:
        t = p + sign * h
        if 0.0 <= t <= 1.0:
            samples.append(float(g(t)))
    if not samples:
        return LimitEstimate(float(g(p)), True)
    return extrapolate(samples, cfg)


def path_limit(
    g: Callable[[float], float], max_offset: float, cfg: ToleranceConfig = DEFAULT_TOLERANCES
) -> LimitEstimate | None:
    """Limit of ``g(h)`` as h -> 0+, using schedule offsets not above ``max_offset``.

    Returns ``None`` when no offset is admissible (the path leaves the domain
    immediately).
    """
    samples = [float(g(h)) for h in cfg.limit_offsets if h <= max_offset]
    if not samples:
        return None
    return extrapolate(samples, cfg)


def worker_count() -> int:
    """Parallelism cap from ``UNILAB_THREADS`` (default 1)."""
    raw = os.environ.get("UNILAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1
