from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from unilab.core import fold
from unilab.errors import AxiomError, CarrierError, DomainError, ParameterError, PreconditionError
from unilab.intervals import Interval
from unilab.numerics import InfinityConvention
from unilab.operators import (
    Builtin,
    CarrierMap,
    SemigroupPart,
    builtin,
    clifford_sum,
    dualize,
    linear_rescale,
    piecewise_transform,
    umax_construct,
    umin_construct,
    validate_clifford,
)
from unilab.registry import THIRD, TWO_THIRDS, fig5_parts, log_odds

unit = st.floats(0.0, 1.0)


def test_builtin_examples():
    assert builtin(Builtin.DrasticTnorm)(0.3, 0.4) == 0.0
    assert builtin(Builtin.DrasticTnorm)(0.3, 1.0) == pytest.approx(0.3)
    assert builtin("min")(0.3, 0.4) == pytest.approx(0.3)


def test_dual_examples():
    assert dualize(builtin("min"))(0.3, 0.4) == pytest.approx(0.4)
    assert dualize(builtin("lukasiewicz"))(0.3, 0.4) == pytest.approx(0.7)
    assert dualize(dualize(builtin("product")))(0.5, 0.5) == pytest.approx(0.25)
    assert dualize(builtin("product")).neutral == 0.0


@given(unit, unit)
def test_dual_of_product_is_probabilistic_sum(x, y):
    assert dualize(builtin("product"))(x, y) == pytest.approx(builtin("prob_sum")(x, y), abs=1e-12)


def test_rescale_examples():
    T = linear_rescale(builtin("product"), Interval(0.0, THIRD))
    assert T(THIRD, THIRD) == pytest.approx(THIRD)
    assert T(1 / 6, 1 / 6) == pytest.approx(1 / 12)
    S = linear_rescale(builtin("max"), Interval(TWO_THIRDS, 1.0))
    assert S(TWO_THIRDS, 0.8) == pytest.approx(0.8)
    with pytest.raises(CarrierError):
        T(0.5, 0.1)


def test_pasting_examples():
    T, S = builtin("product"), builtin("prob_sum")
    U = umin_construct(T, S, 0.5)
    assert U(0.2, 0.9) == pytest.approx(0.2)
    assert U(0.4, 0.4) == pytest.approx(0.32)
    assert umax_construct(T, S, 0.5)(0.2, 0.9) == pytest.approx(0.9)
    assert umax_construct(builtin("drastic_tnorm"), builtin("max"), 0.5)(0.3, 0.4) == 0.0


def test_pasting_rejects_wrong_blocks():
    with pytest.raises(AxiomError, match="neutral element 1"):
        umin_construct(builtin("max"), builtin("prob_sum"), 0.5)
    with pytest.raises(DomainError):
        umin_construct(builtin("product"), builtin("prob_sum"), 1.5)


def test_transform_examples():
    U = log_odds()
    R = piecewise_transform(U, 0.0, THIRD, TWO_THIRDS, 1.0, THIRD)
    assert R.neutral == pytest.approx(THIRD)
    for x in (0.1, 0.9):
        assert R(THIRD, x) == pytest.approx(x, abs=1e-12)
    xs = [0.0, 0.1, 0.2, 0.3, THIRD, 0.7, 0.8, 0.9, 1.0]
    X, Y = np.meshgrid(xs, xs)
    V = R.values(X, Y)
    assert np.all((V < THIRD) | (V == THIRD) | (V > TWO_THIRDS))
    m = CarrierMap(0.5, 0.0, THIRD, TWO_THIRDS, 1.0, THIRD)
    assert float(m.forward(0.5)) == THIRD


def test_transform_parameter_checks():
    with pytest.raises(ParameterError):
        piecewise_transform(log_odds(), 0.5, THIRD, TWO_THIRDS, 1.0, THIRD)
    with pytest.raises(ParameterError):
        piecewise_transform(builtin("product"), 0.0, THIRD, TWO_THIRDS, 1.0, THIRD)


def _alpha_beta():
    alpha = SemigroupPart.of(linear_rescale(builtin("product"), Interval(0.0, THIRD)), 0)
    beta = SemigroupPart.of(linear_rescale(log_odds(), Interval(THIRD, TWO_THIRDS)), 1)
    return alpha, beta


def test_clifford_examples():
    alpha, beta = _alpha_beta()
    G = clifford_sum([alpha, beta])
    assert G(0.2, 0.5) == pytest.approx(0.2)
    assert G(0.5, 0.2) == pytest.approx(0.2)
    assert G(0.2, 0.3) == pytest.approx(alpha.op(0.2, 0.3))


def test_validate_clifford_examples():
    assert validate_clifford(fig5_parts()).ok
    rep = validate_clifford(fig5_parts(closed=True))
    assert not rep.ok
    assert any("not annihilator of higher-ranked part" in v.message and v.witness[0] == pytest.approx(TWO_THIRDS)
               for v in rep.violations)
    disjoint = [
        SemigroupPart.of(linear_rescale(builtin("product"), Interval(0.0, 0.25)), 0),
        SemigroupPart.of(linear_rescale(builtin("max"), Interval(0.5, 1.0)), 1),
    ]
    assert validate_clifford(disjoint).ok


def test_clifford_sum_raises_on_bad_preconditions():
    with pytest.raises(PreconditionError, match="2/3"):
        clifford_sum(fig5_parts(closed=True))


@given(st.floats(0.0, THIRD), st.floats(0.0, THIRD))
def test_ordinal_sum_restricts_to_parts(x, y):
    alpha, beta = _alpha_beta()
    G = clifford_sum([alpha, beta])
    assert G(x, y) == pytest.approx(alpha.op(x, y), abs=1e-12)


def test_fold_is_left_to_right():
    assert fold(builtin("product"), [0.5, 0.5, 0.5]) == pytest.approx(0.125)


def test_representable_conventions():
    assert log_odds(InfinityConvention.SumIsPlusInfinity)(0.0, 1.0) == 1.0
    assert log_odds()(0.0, 1.0) == 0.0
