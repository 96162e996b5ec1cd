"""The :class:`Operator` value type and report containers shared across modules."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .errors import CarrierError
from .intervals import CarrierSet, nice_number
from .numerics import DEFAULT_TOLERANCES

BinaryFn = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class Operator:
    """A commutative binary operation on a carrier inside [0, 1].

    ``func`` is vectorised and receives arguments that already lie in the
    carrier. Callers go through :meth:`raw` (canonical argument order, no
    checks) or :meth:`values` (snapping and carrier checks).
    """

    carrier: CarrierSet
    func: BinaryFn
    neutral: float | None = None
    annihilator: float | None = None
    provenance: str = ""
    anchors: tuple[float, ...] = ()
    notes: tuple[str, ...] = ()
    snap_tol: float = DEFAULT_TOLERANCES.eq_tol

    def raw(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        lo = np.minimum(x, y)
        hi = np.maximum(x, y)
        return np.asarray(self.func(lo, hi), dtype=float)

    def values(self, x, y) -> np.ndarray:
        x = self.carrier.snap_array(np.asarray(x, dtype=float), self.snap_tol)
        y = self.carrier.snap_array(np.asarray(y, dtype=float), self.snap_tol)
        out = self.raw(x, y)
        try:
            return self.carrier.snap_array(out, self.snap_tol)
        except CarrierError as exc:
            raise CarrierError(f"construction bug: {self.provenance or 'operator'} left its carrier: {exc}") from exc

    def __call__(self, x: float, y: float) -> float:
        return float(self.values(float(x), float(y)))

    @property
    def is_full(self) -> bool:
        return self.carrier.is_full

    def anchor_points(self) -> list[float]:
        pts = set(self.carrier.endpoints())
        pts.update(self.anchors)
        if self.neutral is not None:
            pts.add(self.neutral)
        return sorted(p for p in pts if 0.0 <= p <= 1.0)

    def describe(self) -> str:
        e = "none" if self.neutral is None else nice_number(self.neutral)
        return f"{self.provenance or 'operator'} on {self.carrier} (neutral {e})"


def evaluate(op: Operator, x: float, y: float) -> float:
    """Evaluate with carrier snapping; commutativity is enforced by sorting the arguments."""
    return op(x, y)


def fold(op: Operator, values: Iterable[float]) -> float:
    """Left-to-right n-ary evaluation."""
    it = iter(values)
    try:
        acc = float(next(it))
    except StopIteration:
        if op.neutral is None:
            raise ValueError("empty fold needs a neutral element") from None
        return op.neutral
    for v in it:
        acc = op(acc, v)
    return acc


@dataclass(frozen=True)
class Violation:
    message: str
    witness: tuple = ()

    def __str__(self) -> str:
        if self.witness:
            pts = ", ".join(nice_number(w) if isinstance(w, float) else str(w) for w in self.witness)
            return f"{self.message} (witness {pts})"
        return self.message


@dataclass
class ValidationReport:
    subject: str = ""
    violations: list[Violation] = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, message: str, *witness) -> None:
        self.violations.append(Violation(message, tuple(witness)))

    def __str__(self) -> str:
        head = self.subject or "validation"
        if self.ok:
            return f"{head}: ok"
        return f"{head}: " + "; ".join(str(v) for v in self.violations)
