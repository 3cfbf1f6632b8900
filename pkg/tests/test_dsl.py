import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eulerchow.dsl import (
    Call,
    Compare,
    DslSyntaxError,
    DuplicateName,
    Expand,
    FunctionalDef,
    Gf,
    MapDef,
    Odot,
    One,
    Product,
    Push,
    Ref,
    Script,
    ScriptError,
    SeriesDef,
    Span,
    UnboundName,
    WrongKind,
    evaluate,
    format_script,
    parse,
)
from eulerchow.errors import NonPositiveMonomial, RankMismatch

RULED = """\
map Psi = [[1,0,-1],[0,1,1]]
series E1 = ruled_e1(0, 1)
series Dom = odot(mcdonald(2), gf([1],1), gf([1],1))
compare E1, push(Psi, Dom) order 12
"""


def test_parse_statements():
    script = parse(RULED)
    assert script.statements == (
        MapDef("Psi", ((1, 0, -1), (0, 1, 1))),
        SeriesDef("E1", Call("ruled_e1", (0, 1))),
        SeriesDef("Dom", Odot((Call("mcdonald", (2,)), Gf((1,), 1), Gf((1,), 1)))),
        Compare(Ref("E1"), Push("Psi", Ref("Dom")), 12, None),
    )
    assert script.statements[1].span == Span(2, 1)


def test_parse_product_and_functional():
    script = parse("functional w = [1, 2]\nexpand one * gf([1, 0], 2) order 3 functional w\n")
    assert script.statements[1] == Expand(Product((One(), Gf((1, 0), 2))), 3, "w")


def test_parse_scroll_sign():
    (stmt,) = parse("expand scroll3(1, 1, 2, -) order 2").statements
    assert stmt.expr == Call("scroll3", (1, 1, 2, -1))


def test_comments_and_blank_lines():
    assert parse("# nothing\n\n  # still nothing\n").statements == ()


def test_arity_error():
    with pytest.raises(DslSyntaxError) as info:
        parse("series X = ruled_e1(0)")
    assert info.value.span == Span(1, 22)
    assert "','" in str(info.value)


def test_syntax_error_reports_position():
    with pytest.raises(DslSyntaxError) as info:
        parse("series X = gf([1], 1)\nexpand X ordr 3")
    assert info.value.span == Span(2, 10)


def test_bad_character():
    with pytest.raises(DslSyntaxError):
        parse("series X = gf([1], 1) $")


def test_integer_range():
    with pytest.raises(ScriptError):
        parse("expand gf([1], 9223372036854775808) order 1")


def test_duplicate_name():
    with pytest.raises(DuplicateName) as info:
        parse("series X = one\nmap X = [[1]]")
    assert info.value.span == Span(2, 5)


def test_unbound_name():
    with pytest.raises(UnboundName):
        parse("expand Y order 2")


def test_wrong_kind():
    with pytest.raises(WrongKind):
        parse("map M = [[1]]\nexpand M order 2")
    with pytest.raises(WrongKind):
        parse("series S = one\nexpand push(S, S) order 2")


def test_evaluate_ruled_compare():
    (result,) = evaluate(parse(RULED))
    assert result.kind == "compare"
    assert result.report.equal and result.report.diffs == ()
    assert result.spec.functional.weights == (1, 2)


def test_evaluate_expand():
    (result,) = evaluate(parse("expand mcdonald(2) order 3"))
    assert [result.series[(d,)] for d in range(4)] == [1, 2, 3, 4]


def test_evaluate_compare_finds_difference():
    (result,) = evaluate(parse("compare mcdonald(2), pn(1, 0) order 3"))
    assert result.report.equal
    (result,) = evaluate(parse("compare mcdonald(3), pn(1, 0) order 2"))
    assert result.report.diffs == (((1,), 3, 2), ((2,), 6, 3))


def test_evaluate_unit_adopts_rank():
    (result,) = evaluate(parse("compare one, gf([1, 1], 0) order 2"))
    assert result.report.equal and result.spec.functional.rank == 2


def test_evaluate_product_of_push():
    text = RULED.replace(
        "compare E1, push(Psi, Dom) order 12",
        "compare E1 * E1, push(Psi, Dom) * push(Psi, Dom) order 8",
    )
    (result,) = evaluate(parse(text))
    assert result.report.equal


def test_rank_mismatch_has_span():
    with pytest.raises(RankMismatch) as info:
        evaluate(parse("series A = gf([1], 1)\ncompare A, gf([1, 1], 1) order 3"))
    assert info.value.span == Span(2, 1)


def test_ungraded_functional_is_reported():
    with pytest.raises(NonPositiveMonomial):
        evaluate(parse("functional w = [1, 1]\nexpand gf([-1, 1], 1) order 2 functional w"))


def test_bad_catalog_argument_is_script_error():
    with pytest.raises(ScriptError) as info:
        evaluate(parse("expand ruled(0, 0, 5) order 2"))
    assert info.value.span == Span(1, 8)


# -- round trip ------------------------------------------------------------

ints = st.integers(-5, 5)
vectors = st.lists(ints, min_size=1, max_size=3).map(tuple)


@st.composite
def scripts(draw):
    names = {"series": [], "map": [], "functional": []}
    counter = iter(range(1000))

    def fresh(prefix):
        return f"{prefix}{next(counter)}"

    def term(depth):
        choices = ["one", "gf", "call"]
        if names["series"]:
            choices.append("ref")
        if depth < 2:
            choices.append("odot")
            if names["map"]:
                choices.append("push")
        kind = draw(st.sampled_from(choices))
        if kind == "one":
            return One()
        if kind == "gf":
            return Gf(draw(vectors), draw(ints))
        if kind == "ref":
            return Ref(draw(st.sampled_from(names["series"])))
        if kind == "odot":
            return Odot(tuple(expr(depth + 1) for _ in range(draw(st.integers(1, 3)))))
        if kind == "push":
            return Push(draw(st.sampled_from(names["map"])), expr(depth + 1))
        name = draw(st.sampled_from(["mcdonald", "pn", "ruled_e1", "ruled", "scroll3"]))
        arity = {"mcdonald": 1, "pn": 2, "ruled_e1": 2, "ruled": 3, "scroll3": 3}[name]
        args = tuple(draw(ints) for _ in range(arity))
        if name == "scroll3":
            args += (draw(st.sampled_from([1, -1])),)
        return Call(name, args)

    def expr(depth=0):
        terms = [term(depth) for _ in range(draw(st.integers(1, 3)))]
        return terms[0] if len(terms) == 1 else Product(tuple(terms))

    def functional():
        return draw(st.sampled_from([None] + names["functional"]))

    statements = []
    for _ in range(draw(st.integers(0, 8))):
        kind = draw(st.sampled_from(["series", "map", "functional", "expand", "compare"]))
        if kind == "series":
            s = SeriesDef(fresh("s"), expr())
            names["series"].append(s.name)
        elif kind == "map":
            s = MapDef(fresh("m"), tuple(draw(st.lists(vectors, min_size=1, max_size=3))))
            names["map"].append(s.name)
        elif kind == "functional":
            s = FunctionalDef(fresh("w"), draw(vectors))
            names["functional"].append(s.name)
        elif kind == "expand":
            s = Expand(expr(), draw(st.integers(0, 50)), functional())
        else:
            s = Compare(expr(), expr(), draw(st.integers(0, 50)), functional())
        statements.append(s)
    return Script(tuple(statements))


@settings(max_examples=200, deadline=None)
@given(scripts())
def test_format_parse_round_trip(script):
    text = format_script(script)
    assert parse(text) == script
    assert format_script(parse(text)) == text


def test_functional_clause_binds_to_its_own_line():
    script = parse("expand one order 2\nfunctional w = [1]\nexpand gf([1], 1) order 2 functional w\n")
    assert script.statements == (
        Expand(One(), 2, None),
        FunctionalDef("w", (1,)),
        Expand(Gf((1,), 1), 2, "w"),
    )
