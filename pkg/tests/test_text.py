import pytest
from hypothesis import given

from lmw.errors import SchemaError
from lmw.semantics.classical import eval_c
from lmw.syntax import cn, fo
from lmw.syntax.base import Var, prop
from lmw.syntax.derived import ampersand
from lmw.syntax.md import has_diamond
from lmw.text.documents import dumps, loads, to_document
from lmw.text.formulas import ParseError, parse_cn, parse_fo, parse_md, print_formula

from .conftest import model
from .strategies import formulas


def test_ampersand_macro_and_expansion_parse_alike():
    p, q = parse_fo("p0(v0)"), parse_fo("p1(v0)")
    assert parse_fo("~(p0(v0) -> ~p1(v0))") == ampersand(p, q) == parse_fo("p0(v0) &&& p1(v0)")


def test_boxto_parses():
    assert parse_cn("p0 []> p1") == cn.BoxTo(cn.Prop(prop(0)), cn.Prop(prop(1)))


def test_binder_scopes_to_the_right():
    got = parse_fo("forall v1 . E(v0,v1) -> p0(v1)")
    assert got == fo.Forall(Var(1), parse_fo("E(v0,v1) -> p0(v1)"))


@pytest.mark.parametrize("phi, text", [
    (cn.BoxTo(cn.Prop(prop(0)), cn.Prop(prop(1))), "(p0 []> p1)"),
    (fo.Neg(fo.Neg(parse_fo("p0(v0)"))), "~~p0(v0)"),
    (fo.Eq(Var(0), Var(0)), "(v0 = v0)"),
])
def test_printer(phi, text):
    assert print_formula(phi) == text


def test_implications_associate_right():
    assert parse_cn("p0 -> p1 -> p0") == parse_cn("p0 -> (p1 -> p0)")


@pytest.mark.parametrize("text", ["p0(", "p0(v0) &", "forall x . p0(v0)", "p0(v0,v1)", "E(v0)"])
def test_parse_errors_carry_a_span(text):
    with pytest.raises(ParseError) as info:
        parse_fo(text)
    assert info.value.span.end <= len(text.encode())


def test_box_only_dialect_reads_diamond_as_abbreviation():
    assert parse_md("<>p0", "box") == parse_md("~[]~p0", "box")
    assert not has_diamond(parse_md("<>p0", "box"))
    assert has_diamond(parse_md("<>p0"))


@given(formulas("fo"))
def test_fo_round_trip(phi):
    assert parse_fo(print_formula(phi)) == phi


@given(formulas("cn"))
def test_cn_round_trip(phi):
    assert parse_cn(print_formula(phi)) == phi


@given(formulas("md"))
def test_md_round_trip(phi):
    assert parse_md(print_formula(phi)) == phi


# model documents

CLASSICAL = {"kind": "classical", "signature": ["p0"], "domain": ["a"], "interp": {"p0": [["a"]]}}


def test_classical_document_loads_and_evaluates():
    M = model(CLASSICAL)
    assert eval_c(M, {Var(0): "a"}, parse_fo("p0(v0)"))


def test_unknown_world_in_rel_is_a_schema_error():
    doc = {"kind": "nc", "signature": ["p0"], "worlds": ["w0"], "leq": [["w0", "w0"]],
           "valplus": {"p0": []}, "valminus": {"p0": []}, "rel": [["w0", [["w9"], []], "w0"]]}
    with pytest.raises(SchemaError):
        model(doc)


@pytest.mark.parametrize("doc", [
    {"kind": "nope"},
    {"kind": "classical", "signature": ["p0"], "domain": ["a"], "interp": {"p0": [["b"]]}},
    {"kind": "classical", "signature": ["p0"], "domain": ["a"]},
])
def test_malformed_documents(doc):
    with pytest.raises(SchemaError):
        model(doc)


def test_not_json_is_a_schema_error():
    with pytest.raises(SchemaError):
        loads("{")


@pytest.mark.parametrize("kind", ["classical", "kripke-modal", "int-sheaf", "n4-sheaf", "ck", "nc"])
def test_document_round_trip_is_byte_stable(kind):
    from lmw.search.generators import Bounds, gen_models

    for M in gen_models(kind, Bounds(instances=40)):
        text = dumps(M)
        again = loads(text)
        assert again == M
        assert dumps(again) == text
        assert to_document(again) == to_document(M)
