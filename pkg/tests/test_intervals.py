from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from unilab.errors import CarrierError, ParameterError
from unilab.intervals import UNIT, CarrierSet, Interval, nice_number


def test_nice_number_prints_small_fractions():
    assert nice_number(1 / 3) == "1/3"
    assert nice_number(0.5) == "1/2"
    assert nice_number(1.0) == "1"
    assert nice_number(0.123456789) == "0.123456789"


def test_open_and_closed_membership():
    iv = Interval(0.0, 1 / 3, True, False)
    assert iv.contains(0.0) and not iv.contains(1 / 3)
    assert iv.contains(1 / 3, tol=1e-9)
    assert str(iv) == "[0, 1/3)"
    assert list(iv.contains_array(np.array([0.0, 0.2, 1 / 3]))) == [True, True, False]


def test_degenerate_intervals_must_be_closed_points():
    assert Interval.point(0.5).is_singleton
    with pytest.raises(ParameterError):
        Interval(0.5, 0.5, False, True)
    with pytest.raises(ParameterError):
        Interval(0.6, 0.5)


def test_carrier_set_merges_touching_parts():
    c = CarrierSet.of(Interval(0.0, 0.5, True, False), Interval(0.5, 1.0))
    assert c.is_full and c == CarrierSet.unit()
    gap = CarrierSet.of(Interval(0.0, 0.5, True, False), Interval(0.5, 1.0, False, True))
    assert len(gap.parts) == 2 and not gap.contains(0.5)


def test_snap_pulls_near_points_in_and_rejects_far_ones():
    c = CarrierSet.of(Interval(0.0, 1 / 3))
    assert c.snap(1 / 3 + 1e-12, 1e-9) == pytest.approx(1 / 3)
    with pytest.raises(CarrierError):
        c.snap(0.5, 1e-9)
    with pytest.raises(CarrierError):
        c.snap_array(np.array([0.1, 0.9]), 1e-9)


def test_intersection_points_reports_shared_endpoint():
    a = CarrierSet.of(Interval(0.0, 1 / 3))
    b = CarrierSet.of(Interval(1 / 3, 2 / 3))
    assert a.intersection_points(b) == ([1 / 3], False)
    assert CarrierSet.of(UNIT).intersection_points(b)[1]


@given(st.floats(0, 0.75), st.floats(1e-3, 0.25), st.floats(0, 1))
def test_affine_maps_are_inverse(lo, width, t):
    # widths near one ulp would lose all precision in the round trip
    iv = Interval(lo, lo + width)
    assert iv.affine_from(iv.affine_to(t)) == pytest.approx(t, abs=1e-9)
