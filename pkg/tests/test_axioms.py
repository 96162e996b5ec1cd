from __future__ import annotations

from dataclasses import replace

import numpy as np

from unilab.axioms import GridSpec, check_axioms
from unilab.operators import builtin
from unilab.registry import THIRD, example


def test_grid_includes_anchor_points():
    pts = GridSpec(11).points(example("fig5_t_rep_s"))
    assert THIRD in pts and 2 / 3 in pts
    assert np.all(np.diff(pts) > 0)


def test_min_passes_exactly():
    rep = check_axioms(builtin("min"), GridSpec(65))
    assert rep.ok
    assert rep.results["associativity"].max_deviation == 0.0


def test_fig2_passes_within_tolerance():
    assert check_axioms(example("fig2_rep_ordinal"), GridSpec(65), assoc_n=21).ok


def test_corrupted_product_fails_associativity_with_triple():
    P = builtin("product")

    def patched(x, y):
        out = np.asarray(x * y, dtype=float)
        return np.where((x == 0.5) & (y == 0.5), 0.251, out)

    bad = replace(P, func=patched, provenance="patched product")
    rep = check_axioms(bad)
    assoc = rep.results["associativity"]
    assert not rep.ok and not assoc.passed
    assert len(assoc.witness) == 3
    assert rep.results["commutativity"].passed


def test_non_commutative_function_is_caught():
    P = builtin("product")
    bad = replace(P, func=lambda x, y: x * y + 0.01 * (x - y) * x * (1 - x))
    assert not check_axioms(bad, GridSpec(33), assoc_n=9).results["commutativity"].passed
