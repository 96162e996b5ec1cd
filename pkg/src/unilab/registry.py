"""Worked examples from the literature, fully concretised.

Representable blocks use the log-odds generator ln(x/(1-x)), t-norm blocks use
the product and t-conorm blocks the probabilistic sum. Where the closed
carriers of an example would break the ordinal-sum preconditions, the carrier
is made half-open; each adjustment is recorded in the operator notes.
"""

from __future__ import annotations

import enum
from dataclasses import replace
from fractions import Fraction
from functools import lru_cache

from . import expr as ex
from .core import Operator
from .generators import GeneratorKind, GeneratorSpec, representable_from_generator
from .intervals import Interval
from .numerics import InfinityConvention
from .operators import (
    Builtin,
    SemigroupPart,
    builtin,
    clifford_sum,
    linear_rescale,
    piecewise_transform,
    singleton,
    umax_construct,
    umin_construct,
)

THIRD = 1.0 / 3.0
TWO_THIRDS = 2.0 / 3.0

LOG_ODDS = ex.Func("ln", ex.BinOp("/", ex.Var(), ex.BinOp("-", ex.Num(Fraction(1)), ex.Var())))


class Example(enum.Enum):
    Fig1_Umin = "fig1_umin"
    Fig1_Umax = "fig1_umax"
    Fig2_RepOrdinal = "fig2_rep_ordinal"
    Fig3_RepOverUmax = "fig3_rep_over_umax"
    Fig4_U = "fig4_u"
    Fig4_V = "fig4_v"
    Fig5_TRepS = "fig5_t_rep_s"
    Drastic_Umax = "drastic_umax"

    @classmethod
    def lookup(cls, name: "str | Example") -> "Example":
        if isinstance(name, Example):
            return name
        key = str(name).strip()
        for item in cls:
            if key == item.name or key.lower() == item.value:
                return item
        raise KeyError(f"unknown example {name!r}; known: {', '.join(e.value for e in cls)}")


# DSL text of each example, used as the parser corpus and by the CLI
DSL = {
    Example.Fig1_Umin: "umin(T=product, S=prob_sum, e=1/2)",
    Example.Fig1_Umax: "umax(T=product, S=prob_sum, e=1/2)",
    Example.Drastic_Umax: "umax(T=drastic_tnorm, S=max, e=1/2)",
    Example.Fig2_RepOrdinal: (
        "ordinal(part(transform(representable(f=ln(x/(1-x)), conjunctive), a=0, b=1/3, c=2/3, d=1, v=1/3), rank=0), "
        "part([1/3, 2/3], representable(f=ln(x/(1-x)), conjunctive), rank=1))"
    ),
    Example.Fig3_RepOverUmax: (
        "ordinal(part(transform(representable(f=ln(x/(1-x)), conjunctive), a=0, b=1/3, c=2/3, d=1, v=2/3), rank=0), "
        "part([1/3, 2/3], umax(T=product, S=prob_sum, e=1/2), rank=1))"
    ),
    Example.Fig4_U: (
        "ordinal(part([0, 1/3), product, rank=0), part((2/3, 1], prob_sum, rank=1), "
        "part([1/3, 2/3], product, rank=2))"
    ),
    Example.Fig4_V: (
        "ordinal(part([0, 1/3), product, rank=0), part([1/3, 1/3], rank=1), "
        "part((2/3, 1], prob_sum, rank=2), part((1/3, 2/3], product, rank=3))"
    ),
    Example.Fig5_TRepS: (
        "ordinal(part([2/3, 1], prob_sum, rank=0), part([0, 1/3], product, rank=1), "
        "part([1/3, 2/3), representable(f=ln(x/(1-x)), conjunctive), rank=2))"
    ),
}

FIG5_CLOSED_DSL = (
    "ordinal(part([2/3, 1], prob_sum, rank=0), part([0, 1/3], product, rank=1), "
    "part([1/3, 2/3], representable(f=ln(x/(1-x)), conjunctive), rank=2))"
)


def log_odds(conv: InfinityConvention = InfinityConvention.SumIsMinusInfinity) -> Operator:
    return representable_from_generator(GeneratorSpec(GeneratorKind.UninormGen, LOG_ODDS), conv)


def _noted(op: Operator, name: str, *notes: str) -> Operator:
    return replace(op, provenance=f"example({name})", notes=op.notes + notes)


def fig5_parts(closed: bool = False) -> list[SemigroupPart]:
    """Parts of the T / representable / S ordinal sum (ranks gamma < alpha < beta)."""
    middle = Interval(THIRD, TWO_THIRDS, True, closed)
    return [
        SemigroupPart.of(linear_rescale(builtin(Builtin.ProbabilisticSum), Interval(TWO_THIRDS, 1.0)), 0),
        SemigroupPart.of(linear_rescale(builtin(Builtin.Product), Interval(0.0, THIRD)), 1),
        SemigroupPart.of(linear_rescale(log_odds(), middle), 2),
    ]


def _build(ex_: Example) -> Operator:
    name = ex_.value
    T, S = builtin(Builtin.Product), builtin(Builtin.ProbabilisticSum)
    if ex_ is Example.Fig1_Umin:
        return _noted(umin_construct(T, S, 0.5), name)
    if ex_ is Example.Fig1_Umax:
        return _noted(umax_construct(T, S, 0.5), name)
    if ex_ is Example.Drastic_Umax:
        return _noted(umax_construct(builtin(Builtin.DrasticTnorm), builtin(Builtin.Max), 0.5), name)
    if ex_ is Example.Fig2_RepOrdinal:
        outer = piecewise_transform(log_odds(), 0.0, THIRD, TWO_THIRDS, 1.0, THIRD)
        inner = linear_rescale(log_odds(), Interval(THIRD, TWO_THIRDS))
        op = clifford_sum([SemigroupPart.of(outer, 0), SemigroupPart.of(inner, 1)])
        return _noted(op, name, "outer representable block taken conjunctive")
    if ex_ is Example.Fig3_RepOverUmax:
        outer = piecewise_transform(log_odds(), 0.0, THIRD, TWO_THIRDS, 1.0, TWO_THIRDS)
        inner = linear_rescale(umax_construct(T, S, 0.5), Interval(THIRD, TWO_THIRDS))
        op = clifford_sum([SemigroupPart.of(outer, 0), SemigroupPart.of(inner, 1)])
        return _noted(op, name, "outer representable block taken conjunctive")
    if ex_ is Example.Fig4_U:
        parts = [
            SemigroupPart.of(linear_rescale(T, Interval(0.0, THIRD, True, False)), 0),
            SemigroupPart.of(linear_rescale(S, Interval(TWO_THIRDS, 1.0, False, True)), 1),
            SemigroupPart.of(linear_rescale(T, Interval(THIRD, TWO_THIRDS)), 2),
        ]
        return _noted(clifford_sum(parts), name, "carriers [0,1/3) and (2/3,1] made half-open")
    if ex_ is Example.Fig4_V:
        parts = [
            SemigroupPart.of(linear_rescale(T, Interval(0.0, THIRD, True, False)), 0),
            SemigroupPart.of(singleton(THIRD), 1),
            SemigroupPart.of(linear_rescale(S, Interval(TWO_THIRDS, 1.0, False, True)), 2),
            SemigroupPart.of(linear_rescale(T, Interval(THIRD, TWO_THIRDS, False, True)), 3),
        ]
        return _noted(clifford_sum(parts), name, "carriers [0,1/3) and (2/3,1] made half-open")
    if ex_ is Example.Fig5_TRepS:
        return _noted(clifford_sum(fig5_parts()), name, "middle carrier [1/3,2/3) made half-open")
    raise KeyError(ex_)


@lru_cache(maxsize=None)
def _cached(ex_: Example) -> Operator:
    return _build(ex_)


def example(name: "str | Example") -> Operator:
    return _cached(Example.lookup(name))


def all_examples() -> dict[str, Operator]:
    return {e.name: example(e) for e in Example}
