import random

import pytest

from lmw.errors import BadConclusion, BadLine
from lmw.proofs import (
    MP, AxiomInstance, Consecution, Derivation, Premise, ProofBuilder, corpus, check_consecution, check_derivation,
    dumps_proof, instantiate, loads_proof, match_schema, SCHEMAS,
)
from lmw.proofs.document import ProofSyntaxError
from lmw.search.countermodel import find_countermodel
from lmw.search.generators import Bounds
from lmw.syntax.base import Var
from lmw.syntax import cn, fo
from lmw.text.formulas import parse_cn, parse_fo

from .mutations import mutate

F, C = parse_fo, parse_cn


def test_match_a1():
    b = match_schema(F("p0(v0) -> (p1(v0) -> p0(v0))"), "a1")
    assert b["phi"] == F("p0(v0)") and b["psi"] == F("p1(v0)")


def test_match_an1_on_a_conditional():
    assert match_schema(C("~~(p0 []> p1) <-> (p0 []> p1)"), "An1")["phi"] == C("p0 []> p1")


def test_match_a9_finds_the_variable_pair():
    b = match_schema(F("(forall v0 . p0(v0)) -> p0(v1)"), "a9")
    assert (b["x"], b["y"]) == (Var(0), Var(1))


def test_match_failure_is_a_value():
    assert match_schema(F("p0(v0) -> p1(v0)"), "a1") is None
    assert match_schema(F("(forall v0 . p0(v0)) -> p1(v1)"), "a9") is None


@pytest.mark.parametrize("text, sid", [
    ("p0(v0) -> (p1(v0) -> p0(v0))", "a1"),
    ("(p0(v0) & p1(v1)) -> p1(v1)", "a4"),
    ("(forall v0 . p0(v0)) -> p0(v1)", "a9"),
    ("p0(v2) -> exists v1 . p0(v1)", "a10"),
    ("(v0 = v1) -> (p0(v0) -> p0(v1))", "a12"),
    ("~(exists v0 . p0(v0)) <-> forall v0 . ~p0(v0)", "An5"),
])
def test_match_then_instantiate_is_identity(text, sid):
    phi = F(text)
    assert instantiate(SCHEMAS[sid], match_schema(phi, sid), fo) == phi


def identity_proof() -> Derivation:
    b = ProofBuilder("ilp")
    b.imp_self(F("p0(v0)"))
    return b.build()


def test_identity_proof():
    d = identity_proof()
    assert len(d.lines) == 5 and d.lines[-1][0] == F("p0(v0) -> p0(v0)")
    check_derivation(d)


def test_line_two_mutation():
    d = identity_proof()
    phi, j = d.lines[1]
    bad = Derivation(d.system, (), d.lines[:1] + ((fo.And(phi, phi), j),) + d.lines[2:])
    with pytest.raises(BadLine) as exc:
        check_derivation(bad)
    assert exc.value.line == 2


def test_schema_gating():
    d = Derivation("ilp", (), ((F("p0(v0) <-> p0(v0)"), AxiomInstance("An1")),))
    with pytest.raises(BadLine, match="schema not in system") as exc:
        check_derivation(d)
    assert exc.value.line == 1


def test_unbound_axiom_line_is_matched():
    check_derivation(Derivation("ilp", (), ((F("p0(v0) -> (p1(v0) -> p0(v0))"), AxiomInstance("alpha1")),)))


def test_mp_shape():
    phi, psi = F("p0(v0)"), F("p1(v0)")
    d = Derivation("ilp", (phi, fo.Imp(phi, psi)), ((phi, Premise(1)), (fo.Imp(phi, psi), Premise(2)), (psi, MP(2, 1))))
    with pytest.raises(BadLine) as exc:
        check_derivation(d)
    assert exc.value.line == 3


def test_rall_side_condition():
    text = """system: qilp
premise 1: (p1(v1) -> p0(v1))
1. (p1(v1) -> p0(v1)) ; premise(1)
2. (p1(v1) -> forall v0 . p0(v0)) ; rall(1; x=v0, y=v1)
"""
    with pytest.raises(BadLine) as exc:
        check_derivation(loads_proof(text))
    assert exc.value.line == 2


def test_single_premise_consecution():
    phi = F("p0(v0)")
    check_consecution(Consecution((phi,), (phi,), Derivation("ilp", (phi,), ((phi, Premise(1)),))))


@pytest.mark.parametrize("last", ["p0(v0) | p1(v0)", "p1(v0) | p0(v0)"])
def test_disjunction_of_succedent(last):
    phi = F(last)
    t1, t2 = F("p0(v0)"), F("p1(v0)")
    check_consecution(Consecution((phi,), (t1, t2), Derivation("ilp", (phi,), ((phi, Premise(1)),))))


def test_conclusion_outside_succedent():
    phi = F("p0(v0)")
    with pytest.raises(BadConclusion):
        check_consecution(Consecution((phi,), (F("p1(v0)"),), Derivation("ilp", (phi,), ((phi, Premise(1)),))))


@pytest.mark.parametrize("name", sorted(corpus()))
def test_corpus_checks_and_round_trips(name):
    text = corpus()[name]
    doc = loads_proof(text)
    (check_consecution if isinstance(doc, Consecution) else check_derivation)(doc)
    assert loads_proof(dumps_proof(doc)) == doc


def test_corpus_has_the_required_entries():
    names = set(corpus())
    assert {"identity", "strong-reflexivity", "double-negation", "ampersand-conjunction"} <= names
    assert len(names) >= 6


@pytest.mark.parametrize("name", sorted(corpus()))
def test_corpus_mutations_are_rejected_at_their_line(name):
    doc = loads_proof(corpus()[name])
    d = doc.certificate if isinstance(doc, Consecution) else doc
    rng = random.Random(f"mutate:{name}")
    for _ in range(5):
        bad, k = mutate(d, rng)
        with pytest.raises(BadLine) as exc:
            check_derivation(bad)
        assert exc.value.line == k


@pytest.mark.parametrize("name", sorted(corpus()))
def test_corpus_conclusions_have_no_countermodel(name):
    doc = loads_proof(corpus()[name])
    d = doc.certificate if isinstance(doc, Consecution) else doc
    delta = doc.delta if isinstance(doc, Consecution) else (d.lines[-1][0],)
    semantics = {"n4ck": "nc", "ilp": "n4", "qilp": "n4", "qn4": "n4"}[d.system]
    hit = find_countermodel(semantics, d.premises, delta, Bounds(worlds=3, elements=3, instances=200))
    assert not hit, hit


def test_syntax_errors_name_the_line():
    with pytest.raises(ProofSyntaxError) as exc:
        loads_proof("system: ilp\n1. p0(v0) ; mp(1)\n")
    assert exc.value.line == 2
