"""Parser corpora shared by the speclang and acceptance tests."""

from unilab.registry import DSL

ROUND_TRIP = list(DSL.values()) + [
    "min",
    "  MAX  ",
    "dual(lukasiewicz)",
    "rescale(product, [0, 1/3])",
    "gen_tnorm(1 - x)",
    "gen_tconorm(-ln(1-x))",
    "representable(f = ln(x/(1-x)), disjunctive)",
    "umax(T=drastic_tnorm, S=max, e=0.5)",
    "transform(representable(f=ln(x/(1-x)), conjunctive), a=0, b=0.25, c=0.75, d=1, v=0.5)",
    "# comment line\nordinal(part([0, 1/3], gen_tnorm(-ln(x)), rank=0),\n"
    "        part([1/3, 2/3], representable(f=ln((3x-1)/(2-3x)), conjunctive), rank=1))",
    "umin(t=gen_tnorm(exp(-x) - exp(-1)), s=dual(product), e=2/5)",
    "example(Fig5_T_Rep_S)",
]

# (text, line, column, fragment of the expectation)
MALFORMED = [
    ("umin(T=product, S=max, e=)", 1, 26, "number"),
    ("", 1, 1, "operator"),
    ("minn", 1, 1, "operator"),
    ("umax(T=drastic_tnorm, S=max e=1/2)", 1, 29, "',' or ')'"),
    ("rescale(product, [0, 1/3)", 1, 26, "',' or ')'"),
    ("umin(T=product,\n     S=max,\n     e=1/2,\n     e=1/2)", 4, 6, "not given before"),
    ("gen_tnorm(1 - )", 1, 15, "expression"),
    ("representable(f=ln(x/(1-x)), sideways)", 1, 30, "conjunctive or disjunctive"),
    ("ordinal(min)", 1, 9, "part(...)"),
    ("example(fig9)", 1, 9, "example name"),
]
