import random

import pytest
from hypothesis import given

from lmw.errors import DiamondInBoxOnly
from lmw.semantics.classical import eval_c
from lmw.syntax import cn, fo
from lmw.search.generators import Bounds, random_model
from lmw.syntax.base import E, O, R, S, Var, prop
from lmw.syntax.ops import free_vars, is_nnf, nnf
from lmw.text.formulas import parse_cn, parse_fo, parse_md
from lmw.translate import (
    BOX_ONLY, VARIANT_I, VARIANT_J, conditional_companions, modal_companion, st_ck, st_modal, st_n4ck, tr_inverse,
    tr_n4,
)

from .strategies import formulas, seeds

F = parse_fo
v0 = Var(0)


def test_tr_reads_falsified_identity_as_eps():
    assert tr_n4(F("~(v0 = v1 -> v1 = v2)")) == F("(v0 = v1) & eps(v1,v2)")


def test_tr_is_not_injective():
    assert tr_n4(F("p0(v0) & ~(v1 = v2)")) == F("p0+(v0) & eps(v1,v2)")
    assert tr_n4(F("~(v0 = v1 -> v1 = v2)")) == tr_n4(F("v0 = v1 & ~(v1 = v2)"))


def test_tr_inverse_atoms():
    assert tr_inverse(F("p0-(v0)")) == F("~p0(v0)")
    assert tr_inverse(F("eps(v0,v1)")) == F("~(v0 = v1)")


@given(formulas("fo"))
def test_tr_ignores_normal_form(phi):
    assert tr_n4(phi) == tr_n4(nnf(phi))


@given(formulas("fo"))
def test_tr_inverse_recovers_normal_forms(phi):
    n = nnf(phi)
    assert is_nnf(tr_inverse(tr_n4(n)))
    assert tr_inverse(tr_n4(n)) == n


def test_modal_translations():
    assert st_modal(v0, parse_md("[]p0")) == F("forall v1 . (E(v0,v1) -> p0(v1))")
    assert st_modal(v0, parse_md("<>p0"), VARIANT_I) == F("exists v1 . (E(v0,v1) & p0(v1))")
    assert st_modal(v0, parse_md("<>p0"), VARIANT_J) == F("~forall v1 . (E(v0,v1) -> ~p0(v1))")
    with pytest.raises(DiamondInBoxOnly):
        st_modal(v0, parse_md("<>p0"), BOX_ONLY)


def test_companion_scheme():
    assert modal_companion(Var(4)) == Var(5)
    assert conditional_companions(Var(2)) == (Var(7), Var(8), Var(9))


def test_classical_conditional_clause():
    want = fo.Exists(Var(1), F("(S(v1) & (forall v2 . (O(v2) -> (E(v2,v1) <-> p0(v2)))))"
                               " & forall v3 . (R(v0,v1,v3) -> p1(v3))"))
    assert st_ck(v0, parse_cn("p0 []> p1")) == want


def test_nelsonian_conditional_top_shape():
    got = st_n4ck(v0, parse_cn("p0 []> p1"))
    assert isinstance(got, fo.Exists) and got.var == Var(1)
    body = got.body
    assert isinstance(body, fo.Neg) and isinstance(body.body, fo.Imp)
    assert isinstance(body.body.right, fo.Neg) and isinstance(body.body.right.body, fo.Forall)
    assert body.body.right.body.var == Var(3)


@given(formulas("cn"))
def test_standard_translations_have_one_free_variable(phi):
    for x in (Var(0), Var(5)):
        assert free_vars(st_ck(x, phi)) <= {x}
        assert free_vars(st_n4ck(x, phi)) <= {x}


@given(formulas("cn"))
def test_translation_commutes_with_negation(phi):
    assert st_ck(v0, cn.Neg(phi)) == fo.Neg(st_ck(v0, phi))


full_vocabulary_models = seeds.map(lambda s: random_model(
    random.Random(s), "classical", Bounds(elements=4), (prop(0), prop(1), S, O, E, R)))


@given(full_vocabulary_models, formulas("cn", 2))
def test_translations_agree_classically(M, phi):
    for a in M.domain:
        assert eval_c(M, {v0: a}, st_ck(v0, phi)) == eval_c(M, {v0: a}, st_n4ck(v0, phi))
