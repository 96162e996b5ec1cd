from __future__ import annotations

import numpy as np
import pytest

from unilab.registry import DSL, THIRD, Example, all_examples, example
from _shared import REGISTRY


def test_registry_has_eight_full_operators():
    ops = all_examples()
    assert len(ops) == 8
    for op in ops.values():
        assert op.is_full and op.neutral is not None


def test_lookup_is_case_insensitive_and_cached():
    assert example("FIG1_UMIN") is example(Example.Fig1_Umin)
    with pytest.raises(KeyError):
        example("fig9")


def test_registry_examples():
    f1 = example("fig1_umin")
    assert f1(0.75, 0.5) == pytest.approx(0.75)
    assert f1(0.75, 0.49) == pytest.approx(0.49)
    assert f1(0.5, 0.5) == pytest.approx(0.5)
    assert example("drastic_umax")(0.25, 0.5) == pytest.approx(0.25)
    assert example("fig5_t_rep_s")(0.2, 0.9) == pytest.approx(0.9)
    f2 = example("fig2_rep_ordinal")
    assert f2(THIRD, 0.1) == pytest.approx(0.1, abs=1e-12)
    # 1/3 is the annihilator of the inner conjunctive block, so it absorbs there
    assert f2(THIRD, 0.5) == pytest.approx(THIRD, abs=1e-12)


def test_adjusted_carriers_are_recorded_in_provenance():
    assert any("half-open" in n for n in example("fig5_t_rep_s").notes)
    assert any("half-open" in n for n in example("fig4_u").notes)
    assert example("fig4_v").provenance == "example(fig4_v)"


@pytest.mark.parametrize("name", REGISTRY)
def test_neutral_element_on_grid(name):
    U = example(name)
    xs = np.linspace(0, 1, 101)
    assert np.max(np.abs(U.values(np.full_like(xs, U.neutral), xs) - xs)) <= 1e-9


def test_every_example_has_dsl_text():
    assert set(DSL) == set(Example)


def test_fig4_variants_differ_exactly_on_the_third_line():
    g = np.unique(np.concatenate([np.linspace(0, 1, 97), [THIRD, 2 * THIRD]]))
    X, Y = np.meshgrid(g, g, indexing="ij")
    diff = np.abs(example("fig4_u").values(X, Y) - example("fig4_v").values(X, Y)) > 1e-12
    # at (1/3, 2/3) both give 1/3, the zero of the middle product block
    on_x = np.isclose(X, THIRD) & (Y > 2 * THIRD + 1e-12)
    assert np.array_equal(diff, on_x | on_x.T)
