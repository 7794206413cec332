import pytest
from hypothesis import given

from lmw.errors import CaptureError
from lmw.syntax import cn, fo
from lmw.syntax.base import Var
from lmw.syntax.derived import (
    AMPERSAND, STRONG_EQUIV, STRONG_IMP, expand_derived, expand_diamondto, match_diamondto, strong_imp,
)
from lmw.syntax.ops import (
    TRIV, free_vars, is_nnf, nnf, predicates, replace_triv, subformulas, subst_var, substitutable,
)
from lmw.text.formulas import parse_cn, parse_fo

from .strategies import formulas

F = parse_fo
v0, v1, v2 = Var(0), Var(1), Var(2)


@pytest.mark.parametrize("text, expected", [
    ("p0(v0) & forall v0 . p1(v0)", {v0}),
    ("v0 = v1", {v0, v1}),
    ("forall v0 . exists v1 . E(v0,v1)", set()),
])
def test_free_vars(text, expected):
    assert free_vars(F(text)) == expected


@pytest.mark.parametrize("text, x, y, expected", [
    ("forall v1 . E(v0,v1)", v0, v1, False),
    ("forall v1 . E(v0,v1)", v0, v2, True),
    ("p0(v0)", v0, v0, True),
])
def test_substitutable(text, x, y, expected):
    assert substitutable(F(text), x, y) is expected


def test_subst_var():
    assert subst_var(F("E(v0,v1)"), v0, v2) == F("E(v2,v1)")
    assert subst_var(F("forall v0 . p0(v0)"), v0, v1) == F("forall v0 . p0(v0)")
    with pytest.raises(CaptureError):
        subst_var(F("forall v1 . E(v0,v1)"), v0, v1)


@pytest.mark.parametrize("text, expected", [
    ("~(p0(v0) & ~(v0 = v1))", "~p0(v0) | (v0 = v1)"),
    ("~(p0(v0) -> p1(v0))", "p0(v0) & ~p1(v0)"),
    ("~forall v0 . p0(v0)", "exists v0 . ~p0(v0)"),
])
def test_nnf_examples(text, expected):
    assert nnf(F(text)) == F(expected)


@pytest.mark.parametrize("text, expected", [
    ("~p0(v0)", True),
    ("~~p0(v0)", False),
    ("forall v0 . (~E(v0,v1) | p0(v0))", True),
])
def test_is_nnf(text, expected):
    assert is_nnf(F(text)) is expected


def test_subformulas():
    p, q = F("p0(v0)"), F("p1(v0)")
    assert subformulas(p) == {p}
    assert subformulas(fo.Neg(p)) == {fo.Neg(p), p}
    assert subformulas(fo.And(p, q)) == {fo.And(p, q), p, q}


def test_replace_triv():
    assert replace_triv(TRIV, F("p0(v1)")) == F("p0(v1)")
    assert replace_triv(F("p0(v0)"), F("p1(v1)")) == F("p0(v0)")
    chi = F("(v0 = v0) & forall v2 . (v0 = v0)")
    assert replace_triv(chi, F("p0(v1)")) == F("p0(v1) & forall v2 . p0(v1)")


def test_expand_derived():
    p, q = F("p0(v0)"), F("p1(v0)")
    assert expand_derived(AMPERSAND, p, q) == F("~(p0(v0) -> ~p1(v0))")
    assert expand_derived(STRONG_IMP, p, p) == F("(p0(v0) -> p0(v0)) & (~p0(v0) -> ~p0(v0))")
    assert expand_derived(STRONG_EQUIV, p, q) == fo.And(strong_imp(p, q), strong_imp(q, p))


def test_expand_diamondto():
    p0, p1 = parse_cn("p0"), parse_cn("p1")
    assert expand_diamondto(p0, p1) == parse_cn("~(p0 []> ~p1)")
    assert expand_diamondto(p0, cn.Neg(p1)) == parse_cn("~(p0 []> ~~p1)")
    assert match_diamondto(expand_diamondto(p0, cn.Neg(p1))) == (p0, cn.Neg(p1))


@given(formulas("fo"))
def test_nnf_output_is_normal(phi):
    assert is_nnf(nnf(phi))


@given(formulas("fo"))
def test_nnf_is_identity_on_normal_forms(phi):
    n = nnf(phi)
    assert nnf(n) == n


@given(formulas("fo"))
def test_nnf_preserves_free_vars_and_symbols(phi):
    assert free_vars(nnf(phi)) == free_vars(phi)
    assert predicates(nnf(phi)) == predicates(phi)


@given(formulas("fo"), formulas("fo"))
def test_derived_expansions_add_no_symbols(phi, psi):
    for kind in (AMPERSAND, STRONG_IMP, STRONG_EQUIV):
        assert predicates(expand_derived(kind, phi, psi)) == predicates(phi) | predicates(psi)


@given(formulas("fo", nvars=3))
def test_renaming_to_fresh_variable_round_trips(phi):
    fresh = Var(9)
    assert subst_var(subst_var(phi, v0, fresh), fresh, v0) == phi
