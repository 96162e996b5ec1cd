from __future__ import annotations

import numpy as np
import pytest

from unilab.analysis import (
    GridSpec,
    SectionStatus,
    SideContinuity,
    SideKind,
    continuity_scan,
    discontinuity_points,
    section_profile,
    side_continuity,
)
from unilab.analysis.sections import planar_continuous, refine_gaps
from unilab.errors import CarrierError
from unilab.intervals import Interval
from unilab.operators import builtin, linear_rescale
from unilab.registry import THIRD, TWO_THIRDS, example, log_odds
from _shared import IN_U, scan

CELL = 1 / 256


def test_continuity_scan_examples():
    assert continuity_scan(builtin("product")).continuous
    res = continuity_scan(builtin("drastic_tnorm"))
    assert not res.continuous
    assert max(res.witness) >= 1 - 2 * CELL
    f1 = continuity_scan(example("fig1_umin"))
    assert not f1.continuous
    x, y = sorted(f1.witness)
    assert x == pytest.approx(0.5, abs=CELL) and y > 0.5


def test_section_profile_examples():
    U = example("fig1_umin")
    p = section_profile(U, 0.75)
    assert p.status is SectionStatus.OneJump
    assert p.jump_at == pytest.approx(0.5, abs=1e-9)
    assert p.left_limit == pytest.approx(0.5, abs=1e-6)
    assert p.value_at_jump == pytest.approx(0.75)
    assert p.side is SideKind.RightContinuous
    assert section_profile(U, 0.25).status is SectionStatus.Continuous
    d = section_profile(example("drastic_umax"), 0.25)
    assert d.status is SectionStatus.OneJump and d.jump_at == pytest.approx(0.5, abs=1e-9)


def test_sections_need_full_carrier():
    with pytest.raises(CarrierError):
        section_profile(linear_rescale(builtin("min"), Interval(0, 0.5)), 0.2)


def _near(P, segments):
    """Distance from each point to the union of axis-parallel segments ((x0,x1),(y0,y1))."""
    out = np.full(len(P), np.inf)
    for (x0, x1), (y0, y1) in segments:
        dx = np.maximum(np.maximum(x0 - P[:, 0], P[:, 0] - x1), 0)
        dy = np.maximum(np.maximum(y0 - P[:, 1], P[:, 1] - y1), 0)
        out = np.minimum(out, np.hypot(dx, dy))
    return out


def test_fig1_discontinuity_set():
    P = discontinuity_points(example("fig1_umin")).as_array()
    assert len(P) > 200
    assert np.all(_near(P, [((0.5, 0.5), (0.5, 1)), ((0.5, 1), (0.5, 0.5))]) <= CELL)
    Q = discontinuity_points(example("fig1_umax")).as_array()
    assert np.all(_near(Q, [((0.5, 0.5), (0, 0.5)), ((0, 0.5), (0.5, 0.5))]) <= CELL)


def test_fig4v_cluster_point_is_resolution_limited():
    D = discontinuity_points(example("fig4_v"))
    lim = np.array(D.resolution_limited)
    assert np.any(np.hypot(lim[:, 0] - THIRD, lim[:, 1] - TWO_THIRDS) <= 1e-9)
    assert section_profile(example("fig4_v"), THIRD).status is SectionStatus.Continuous
    assert section_profile(example("fig4_v"), TWO_THIRDS).status is SectionStatus.Continuous


def test_representable_discontinuities_are_the_two_corners():
    P = discontinuity_points(log_odds(), GridSpec(129)).as_array()
    corners = {(0.0, 1.0), (1.0, 0.0)}
    assert {tuple(p) for p in P} <= corners


def test_side_continuity_examples():
    assert side_continuity(example("fig1_umin"), 0.75, 0.5) is SideContinuity.RightOnly
    assert side_continuity(example("drastic_umax"), 0.25, 0.5) is SideContinuity.Neither
    assert side_continuity(builtin("product"), 0.5, 0.5) is SideContinuity.Both
    assert planar_continuous(builtin("product"), 0.5, 0.5)[0]


def test_refine_gaps_separates_steep_slope_from_jump():
    fn = lambda k, m: np.where(m < 0.3, 0.0, 1.0)  # noqa: E731
    lo, hi, flo, fhi = refine_gaps(fn, [0.25], [0.5], [0.0], [1.0], 1e-12)
    assert hi[0] - lo[0] <= 1e-12 and lo[0] <= 0.3 <= hi[0] and fhi[0] - flo[0] == 1.0
    ramp = lambda k, m: np.clip((m - 0.3) * 1e3, 0.0, 1.0)  # noqa: E731
    lo, hi, flo, fhi = refine_gaps(ramp, [0.25], [0.5], [0.0], [1.0], 1e-12, min_gap=1e-4)
    assert fhi[0] - flo[0] <= 1e-4


@pytest.mark.parametrize("name", IN_U)
def test_at_most_one_jump_and_monotone_jump_map(name):
    s = scan(name)
    assert max(len(p.jumps) for p in s.profiles) <= 1
    at = [p.jump_at for p in s.profiles if p.jumps]
    assert all(b <= a + 1e-9 for a, b in zip(at, at[1:]))
