from __future__ import annotations

import math

import pytest
from hypothesis import given, strategies as st

from unilab.errors import IndeterminateSum, NonMonotoneDetected
from unilab.numerics import (
    DEFAULT_TOLERANCES,
    Direction,
    InfinityConvention,
    Side,
    ToleranceConfig,
    approx_eq,
    ext_add,
    monotone_inverse,
    one_sided_limit,
    worker_count,
)


def test_approx_eq_examples():
    assert approx_eq(0.5, 0.5)
    assert approx_eq(0.5, 0.5 + 1e-12)
    assert not approx_eq(0.3, 0.4)


def test_tolerance_ordering_enforced():
    with pytest.raises(ValueError):
        ToleranceConfig(eq_tol=1e-3, jump_tol=1e-4)
    with pytest.raises(ValueError):
        ToleranceConfig(eq_tol=0.0)


def test_limit_offsets_are_geometric():
    h = DEFAULT_TOLERANCES.limit_offsets
    assert h[0] == 2.0**-8 and h[-1] == 2.0**-30
    assert all(b == a / 2 for a, b in zip(h, h[1:]))


def test_monotone_inverse_examples():
    assert monotone_inverse(lambda x: 1 - x, 0.3, 0.0, 1.0, Direction.Decreasing) == pytest.approx(0.7, abs=1e-9)
    assert monotone_inverse(lambda x: -math.log(x) if x > 0 else math.inf, 0.0, 0.0, 1.0, Direction.Decreasing) == 1.0
    assert monotone_inverse(lambda x: 1 - x, 1.5, 0.0, 1.0, Direction.Decreasing) == 0.0


def test_monotone_inverse_detects_wrong_direction():
    with pytest.raises(NonMonotoneDetected):
        monotone_inverse(lambda x: x, 0.5, 0.0, 1.0, Direction.Decreasing)


@given(st.floats(0.0, 1.0))
def test_monotone_inverse_roundtrip(t):
    x = monotone_inverse(lambda u: u**3, t, 0.0, 1.0, Direction.Increasing)
    assert abs(x**3 - t) <= 1e-9


def test_one_sided_limit_examples():
    step = lambda y: 0.0 if y < 0.5 else 1.0  # noqa: E731
    assert one_sided_limit(lambda y: y, 0.5, Side.FromBelow) == (pytest.approx(0.5, abs=1e-9), True)
    assert one_sided_limit(step, 0.5, Side.FromBelow) == (0.0, True)
    assert one_sided_limit(step, 0.5, Side.FromAbove) == (1.0, True)


def test_extended_addition_conventions():
    assert ext_add(1.0, 2.0) == 3.0
    assert ext_add(-math.inf, math.inf, InfinityConvention.SumIsMinusInfinity) == -math.inf
    assert ext_add(-math.inf, math.inf, InfinityConvention.SumIsPlusInfinity) == math.inf
    with pytest.raises(IndeterminateSum):
        ext_add(-math.inf, math.inf)


def test_worker_count_reads_environment(monkeypatch):
    monkeypatch.setenv("UNILAB_THREADS", "3")
    assert worker_count() == 3
    monkeypatch.setenv("UNILAB_THREADS", "nonsense")
    assert worker_count() == 1
