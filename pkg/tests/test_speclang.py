from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from unilab import expr as ex
from unilab.errors import CarrierError, InvalidGenerator, PreconditionError
from unilab.numerics import InfinityConvention
from unilab.registry import DSL, FIG5_CLOSED_DSL, THIRD, example
from unilab.speclang import ParseError, compile_spec, compile_text, format_spec, parse, parse_expr, tokenize
from unilab.speclang import nodes as n
from speclang_corpus import MALFORMED, ROUND_TRIP


def test_parse_examples():
    assert parse("umax(T=drastic_tnorm, S=max, e=1/2)") == n.Umax(n.Builtin("drastic_tnorm"), n.Builtin("max"), Fraction(1, 2))
    node = parse("representable(f = ln(x/(1-x)), conjunctive)")
    assert isinstance(node, n.Representable)
    assert node.convention is InfinityConvention.SumIsMinusInfinity


def test_format_examples():
    assert format_spec(parse("UMAX( T = drastic_tnorm ,S= max,e=0.5 )")) == "umax(T=drastic_tnorm, S=max, e=1/2)"
    assert format_spec(n.Builtin("min")) == "min"


@pytest.mark.parametrize("text", ROUND_TRIP)
def test_round_trip_fixed_point(text):
    once = format_spec(parse(text))
    assert parse(once) == parse(text)
    assert format_spec(parse(once)) == once


def test_registry_texts_are_canonical():
    for text in DSL.values():
        assert format_spec(parse(text)) == text


@pytest.mark.parametrize("text,line,column,expected", MALFORMED)
def test_malformed_positions(text, line, column, expected):
    with pytest.raises(ParseError) as info:
        parse(text)
    err = info.value
    assert (err.line, err.column) == (line, column), str(err)
    assert expected in err.expected


def test_lexer_positions_and_comments():
    toks = tokenize("min # trailing\n  max")
    assert [(t.text, t.line, t.column) for t in toks[:2]] == [("min", 1, 1), ("max", 2, 3)]
    with pytest.raises(ParseError) as info:
        tokenize("umin(T=product, S=max, e=1/2) $")
    assert (info.value.line, info.value.column) == (1, 31)


def test_expression_precedence_and_implicit_product():
    e = parse_expr("-x^2 + 3x/2")
    xs = np.array([0.25, 0.5])
    assert ex.evaluate(e, xs) == pytest.approx(-xs**2 + 1.5 * xs)
    assert ex.format_expr(parse_expr("3x")) == "3*x"
    assert parse_expr("1/3") == ex.Num(Fraction(1, 3))
    assert float(ex.evaluate(parse_expr("2^-1"), np.array([0.0]))) == pytest.approx(0.5)


def test_nesting_limit_is_a_parse_error():
    with pytest.raises(ParseError):
        parse("dual(" * 300 + "min" + ")" * 300)
    with pytest.raises(ParseError):
        parse_expr("(" * 500 + "x" + ")" * 500)


def test_compile_examples():
    assert compile_text("min")(0.3, 0.4) == pytest.approx(0.3)
    G = compile_text(
        "ordinal(part([0,1/3], gen_tnorm(-ln(x)), rank=0), "
        "part([1/3,2/3], representable(f=ln((3x-1)/(2-3x)), conjunctive), rank=1))"
    )
    assert G(THIRD, 0.2) == pytest.approx(0.2)  # neutral of the t-norm part
    assert G(THIRD, 0.5) == pytest.approx(THIRD)  # annihilator of the representable part
    with pytest.raises(PreconditionError, match="2/3"):
        compile_text(FIG5_CLOSED_DSL)


def test_compile_errors_carry_the_path():
    with pytest.raises(InvalidGenerator) as info:
        compile_text("ordinal(part([0, 1/2], gen_tnorm(x), rank=0), part([1/2, 1], max, rank=1))")
    assert info.value.path == "ordinal.part[0].gen_tnorm"
    with pytest.raises(CarrierError):
        compile_text("part([0, 1], min, rank=0)")


@pytest.mark.parametrize("text", list(DSL.values()))
def test_compile_matches_registry(text):
    U = compile_text(text)
    name = next(k for k, v in DSL.items() if v == text)
    R = example(name)
    g = np.linspace(0, 1, 101)
    X, Y = np.meshgrid(g, g)
    assert np.array_equal(U.values(X, Y), R.values(X, Y))


def test_compile_is_deterministic():
    a = compile_spec(parse(ROUND_TRIP[-2]))
    b = compile_spec(parse(ROUND_TRIP[-2]))
    g = np.linspace(0, 1, 101)
    X, Y = np.meshgrid(g, g)
    assert np.array_equal(a.values(X, Y), b.values(X, Y))
    assert a.provenance == format_spec(parse(ROUND_TRIP[-2]))


@settings(max_examples=300, deadline=None)
@given(st.binary(max_size=80))
def test_parse_is_total_on_bytes(data):
    text = data.decode("utf-8", errors="replace")
    try:
        parse(text)
    except ParseError as err:
        assert err.line >= 1 and err.column >= 1


ALPHABET = list("()[],=+-*/^ x.0123456789\n") + ["min", "umin", "T", "S", "e", "part", "rank", "ln", "ordinal", "1/2"]


@settings(max_examples=300, deadline=None)
@given(st.lists(st.sampled_from(ALPHABET), max_size=30))
def test_parse_is_total_on_token_soup(parts):
    try:
        node = parse("".join(parts))
    except ParseError:
        return
    assert parse(format_spec(node)) == node
