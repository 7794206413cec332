import pytest
from hypothesis import given

from lmw.semantics.classical import eval_c
from lmw.semantics.sheaf import (
    check_th, eval_i, eval_n, generated_subsheaf, int_to_nelsonian, nelsonian_to_int, validate_sheaf,
)
from lmw.syntax.base import EPS, O, R, S, E, Signature, Var, prop
from lmw.syntax.fo import Neg
from lmw.syntax.ops import free_vars
from lmw.text.formulas import parse_fo
from lmw.theories import th_n4
from lmw.translate import tr_n4

from .conftest import model
from .strategies import formulas, models

F = parse_fo
v0, v1 = Var(0), Var(1)


def int_sheaf(worlds, leq, models_, homs=None):
    return model({"kind": "int-sheaf", "signature": ["p0"], "worlds": worlds, "leq": leq,
                  "models": models_, **({"homs": homs} if homs else {})})


def test_single_world_identity_is_valid():
    S_ = int_sheaf(["w"], [["w", "w"]], {"w": {"domain": ["a"], "interp": {"p0": [["a"]]}}})
    assert validate_sheaf(S_).ok


def test_hom_dropping_a_member_is_reported():
    S_ = int_sheaf(["w", "v"], [["w", "w"], ["w", "v"], ["v", "v"]],
                   {"w": {"domain": ["a"], "interp": {"p0": [["a"]]}},
                    "v": {"domain": ["b", "c"], "interp": {"p0": [["b"]]}}},
                   {"w→v": {"a": "c"}})
    report = validate_sheaf(S_)
    assert report.first.kind == "hom not homomorphism"
    assert "hom not homomorphism at (w,v)" in report.first.detail


def test_functoriality_failure_is_reported():
    leq = [["w", "w"], ["v", "v"], ["u", "u"], ["w", "v"], ["v", "u"], ["w", "u"]]
    dom = {"domain": ["a", "b"], "interp": {"p0": []}}
    S_ = int_sheaf(["w", "v", "u"], leq, {"w": dom, "v": dom, "u": dom},
                   {"w→v": {"a": "b", "b": "b"}, "v→u": {"a": "a", "b": "b"}, "w→u": {"a": "a", "b": "b"}})
    assert validate_sheaf(S_).first.kind == "functoriality"


@given(models("int-sheaf", worlds=1), formulas("fo+"))
def test_one_world_sheaf_is_classical(S_, phi):
    w = S_.worlds[0]
    f = {x: S_.domain(w)[0] for x in free_vars(phi)}
    assert eval_i(S_, w, f, phi) == eval_c(S_.models[w], f, phi)


def _chain():
    return int_sheaf(["w", "v"], [["w", "w"], ["w", "v"], ["v", "v"]],
                     {"w": {"domain": ["a"], "interp": {"p0": []}},
                      "v": {"domain": ["a"], "interp": {"p0": [["a"]]}}})


def test_two_world_chain():
    S_, f = _chain(), {v0: "a"}
    assert eval_i(S_, "w", f, F("p0(v0) -> p0(v0)"))
    assert not eval_i(S_, "w", f, F("p0(v0)"))
    assert eval_i(S_, "v", f, F("p0(v0)"))
    assert eval_i(S_, "w", {}, F("forall v1 . (p0(v1) -> p0(v1))"))


def _n4_one(pos, neg, eps=()):
    return model({"kind": "n4-sheaf", "signature": ["p0"], "worlds": ["w"], "leq": [["w", "w"]],
                  "models": {"w": {"pos": {"domain": ["a", "b"], "interp": {"p0": pos}},
                                   "neg": {"domain": ["a", "b"], "interp": {"p0": neg, "eps": list(eps)}}}}})


def test_falsified_identity_reads_eps():
    S_ = _n4_one([], [], [["a", "b"]])
    assert eval_n(S_, "w", {v0: "a", v1: "b"}, F("v0 = v1"), "-")
    assert not eval_n(S_, "w", {v0: "b", v1: "a"}, F("v0 = v1"), "-")


def test_glutted_point_is_accepted():
    S_ = _n4_one([["a"]], [["a"]])
    assert eval_n(S_, "w", {v0: "a"}, F("p0(v0)"), "+")
    assert eval_n(S_, "w", {v0: "a"}, F("p0(v0)"), "-")


@given(models("n4-sheaf"), formulas("fo"))
def test_negation_swaps_polarity(S_, phi):
    for w in S_.worlds:
        f = {x: S_.domain(w)[0] for x in free_vars(phi)}
        assert eval_n(S_, w, f, Neg(phi), "-") == eval_n(S_, w, f, phi, "+")
        assert eval_n(S_, w, f, Neg(phi), "+") == eval_n(S_, w, f, phi, "-")


def test_subsheaf_at_maximal_and_minimal_worlds():
    S_ = _chain()
    top = generated_subsheaf(S_, "v")
    assert top.worlds == ("v",)
    assert generated_subsheaf(S_, "w") == S_


@given(models("n4-sheaf"), formulas("fo"))
def test_subsheaf_preserves_evaluation(S_, phi):
    w = S_.worlds[-1]
    T = generated_subsheaf(S_, w)
    for v in T.worlds:
        f = {x: S_.domain(v)[-1] for x in free_vars(phi)}
        for pol in "+-":
            assert eval_n(T, v, f, phi, pol) == eval_n(S_, v, f, phi, pol)


def test_signed_sheaf_fields():
    S_ = _n4_one([["a"]], [["b"]], [["a", "b"]])
    Si = nelsonian_to_int(S_)
    p0 = prop(0)
    assert Si.domain("w") == S_.domain("w")
    assert Si.models["w"].interp[p0.plus()] == {("a",)}
    assert Si.models["w"].interp[p0.minus()] == {("b",)}
    back = int_to_nelsonian(Si)
    assert back == S_
    assert EPS in back.neg["w"].interp and EPS not in back.pos["w"].interp


@given(models("n4-sheaf"), formulas("fo"))
def test_signed_sheaf_round_trip_and_translation(S_, phi):
    Si = nelsonian_to_int(S_)
    assert int_to_nelsonian(Si) == S_
    t = tr_n4(phi)
    for w in S_.worlds:
        f = {x: S_.domain(w)[0] for x in free_vars(phi)}
        assert eval_i(Si, w, f, t) == eval_n(S_, w, f, phi, "+")


def _sig(n):
    return Signature.of([S, O, E, R] + [prop(i) for i in range(n)])


def test_nelsonian_theory_shape():
    th = th_n4(_sig(1))
    assert th.labels == ("extensionality", "prop-set[p0]", "complement", "meet", "implication",
                         "conditional-image")


def test_empty_theory_holds():
    assert check_th(_n4_one([], []), []).ok


def test_missing_complement_is_named():
    S_ = model({
        "kind": "n4-sheaf", "signature": ["p0", "S", "O", "E", "R"], "worlds": ["w"], "leq": [["w", "w"]],
        "models": {"w": {
            "pos": {"domain": ["w", "c"], "interp": {"p0": [["w"]], "S": [["c"]], "O": [["w"]],
                                                     "E": [["w", "c"]], "R": []}},
            "neg": {"domain": ["w", "c"], "interp": {"p0": [], "S": [], "O": [], "E": [], "R": [],
                                                     "eps": []}}}}})
    report = check_th(S_, th_n4(S_.signature))
    assert not report.ok
    assert report.first.witness[1] == "complement"
