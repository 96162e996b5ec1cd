from __future__ import annotations

import numpy as np
import pytest

from unilab.analysis import GridSpec, characterizing_svf, constant_svf, discontinuity_points, validate_svf
from unilab.errors import ClassError
from unilab.intervals import Interval
from unilab.registry import THIRD, TWO_THIRDS, example
from _shared import IN_U, REGISTRY, classification

CELL = 1 / 256


def test_fig5_svf_pieces():
    r = characterizing_svf(example("fig5_t_rep_s"))
    xs = np.linspace(THIRD, TWO_THIRDS, 200)[1:-1]
    lo, hi = r.bounds(xs)
    assert np.max(np.abs(lo - (1 - xs))) <= 2 / 256 and np.max(np.abs(hi - (1 - xs))) <= 2 / 256
    lo, hi = r.bounds([0.1, THIRD])
    assert lo == pytest.approx([TWO_THIRDS] * 2, abs=1e-6) and hi == pytest.approx([TWO_THIRDS] * 2, abs=1e-6)
    r0 = r(0.0)
    assert (r0.lo, r0.hi) == pytest.approx((TWO_THIRDS, 1.0), abs=1e-6)


def test_fig1_svf_pieces():
    r = characterizing_svf(example("fig1_umin"))
    assert [p.describe() for p in r.pieces] == [
        "[0, 1/2) -> {1} [top]",
        "{1/2} -> [1/2, 1] [jump]",
        "(1/2, 1) -> {1/2} [plateau]",
        "{1} -> [0, 1/2] [right_edge]",
    ]


@pytest.mark.parametrize("name", IN_U)
def test_r_of_e_contains_e(name):
    U = example(name)
    iv = characterizing_svf(U)(U.neutral)
    assert iv.lo - 1e-9 <= U.neutral <= iv.hi + 1e-9


@pytest.mark.parametrize("name", IN_U)
def test_svf_validates_and_covers_discontinuities(name):
    c = classification(name)
    assert c.svf_report.ok, str(c.svf_report)
    assert c.svf_report.info.get("max_cover_distance", 0.0) <= CELL + 1e-12


def test_strict_mode_rejects_discontinuous_blocks():
    with pytest.raises(ClassError):
        characterizing_svf(example("drastic_umax"))
    assert characterizing_svf(example("drastic_umax"), strict=False).pieces


def test_empty_image_is_a_violation():
    r = constant_svf([
        (Interval(0.0, 0.4), Interval(0.6, 1.0)),
        (Interval(0.6, 1.0), Interval(0.0, 0.4)),
    ])
    rep = validate_svf(r, grid=GridSpec(101))
    msgs = [v for v in rep.violations if "empty" in v.message]
    assert msgs and msgs[0].witness == (pytest.approx(0.5),)


def test_increasing_function_is_a_violation():
    bad = constant_svf([
        (Interval(0.0, 0.5, True, False), Interval(0.0, 0.0)),
        (Interval(0.5, 1.0), Interval(1.0, 1.0)),
    ])
    assert any("non-increasing" in v.message for v in validate_svf(bad, grid=GridSpec(33)).violations)


@pytest.mark.parametrize("name", IN_U)
def test_below_and_above_split(name):
    """Strictly below the graph U < e; strictly above it U > e."""
    U = example(name)
    e = U.neutral
    r = classification(name).svf
    g = np.linspace(0, 1, 65)
    lo, hi = r.bounds(g)
    X, Y = np.meshgrid(g, g, indexing="ij")
    V = U.values(X, Y)
    # (x, y) lies below G(r) if y < r(x) and x < r(y), with a one-cell margin
    below = (Y < lo[:, None] - CELL) & (X < lo[None, :] - CELL)
    above = (Y > hi[:, None] + CELL) & (X > hi[None, :] + CELL)
    assert np.all(V[below] < e + 1e-9)
    assert np.all(V[above] > e - 1e-9)


@pytest.mark.parametrize("name", REGISTRY)
def test_graph_distance_to_corners(name):
    r = classification(name).svf
    assert np.all(r.graph_distance([(0.0, 1.0), (1.0, 0.0)]) <= 1e-4)


def test_discontinuities_lie_on_fig5_graph():
    U = example("fig5_t_rep_s")
    r = characterizing_svf(U)
    P = discontinuity_points(U).as_array()
    assert np.max(r.graph_distance(P)) <= CELL
