from hypothesis import given

from lmw.semantics.conditional import (
    CkModel, NcModel, eval_ck, eval_m, eval_nc, truthset_ck, truthset_nc, validate_nc,
)
from lmw.syntax import cn
from lmw.syntax.base import prop
from lmw.text.formulas import parse_cn, parse_md

from .conftest import model
from .strategies import formulas, models

C = parse_cn
P0, P1 = prop(0), prop(1)


def ck(worlds, valuation, rel):
    return model({"kind": "ck", "signature": sorted(valuation), "worlds": worlds,
                  "valuation": valuation, "rel": rel})


def nc(worlds, leq, valplus, valminus, rel=()):
    return model({"kind": "nc", "signature": sorted(valplus), "worlds": worlds, "leq": leq,
                  "valplus": valplus, "valminus": valminus, "rel": list(rel)})


@given(formulas("cn", 2), formulas("cn", 2))
def test_empty_accessor_makes_every_conditional_true(psi, chi):
    M = ck(["w"], {"p0": [], "p1": ["w"]}, [])
    assert eval_ck(M, "w", cn.BoxTo(psi, chi))


def test_one_world_self_loop():
    M = ck(["w"], {"p0": ["w"]}, [["w", ["w"], "w"]])
    assert eval_ck(M, "w", C("p0 []> p0"))
    assert not eval_ck(M, "w", C("p0 []> ~p0"))


@given(models("ck"), formulas("cn"))
def test_classical_negation(M, phi):
    for w in M.worlds:
        assert eval_ck(M, w, cn.Neg(phi)) is (not eval_ck(M, w, phi))


@given(formulas("cn", 2), formulas("cn", 2))
def test_empty_accessor_nelsonian(psi, chi):
    M = nc(["w"], [["w", "w"]], {"p0": ["w"], "p1": []}, {"p0": [], "p1": ["w"]})
    phi = cn.BoxTo(psi, chi)
    assert eval_nc(M, "w", phi, "+")
    assert not eval_nc(M, "w", phi, "-")


def test_one_world_valuation():
    M = nc(["w"], [["w", "w"]], {"p0": ["w"], "p1": []}, {"p0": [], "p1": []})
    assert eval_nc(M, "w", C("p0 -> p0"))
    assert not eval_nc(M, "w", C("~p1"))


def test_contraposition_countermodel():
    M = nc(["w"], [["w", "w"]], {"p0": ["w"], "p1": ["w"]}, {"p0": [], "p1": ["w"]})
    assert eval_nc(M, "w", C("p0 -> p1"))
    assert not eval_nc(M, "w", C("~p1 -> ~p0"))


def test_truthsets_of_atoms():
    M = nc(["w", "v"], [["w", "w"], ["v", "v"], ["w", "v"]], {"p0": ["v"]}, {"p0": ["w", "v"]})
    b = truthset_nc(M, C("p0"))
    assert (b.pos, b.neg) == ({"v"}, {"w", "v"})
    K = ck(["w", "v"], {"p0": ["v"]}, [])
    assert truthset_ck(K, C("p0")) == {"v"}


@given(models("nc"), formulas("cn"))
def test_truthsets_are_upward_closed_and_negation_swaps(M, phi):
    b = truthset_nc(M, phi)
    for part in (b.pos, b.neg):
        assert all(v in part for w in part for v in M.up[w])
    n = truthset_nc(M, cn.Neg(phi))
    assert (n.pos, n.neg) == (b.neg, b.pos)


@given(models("nc", worlds=1))
def test_discrete_order_satisfies_frame_conditions(M):
    assert validate_nc(M).ok


def test_missing_successor_above_breaks_frame_conditions():
    M = nc(["w", "v"], [["w", "w"], ["v", "v"], ["w", "v"]], {"p0": []}, {"p0": []},
           [["w", [[], []], "w"]])
    kinds = {v.kind for v in validate_nc(M).violations}
    assert "c2" in kinds and "c1" in kinds


def test_valuation_must_persist():
    M = nc(["w", "v"], [["w", "w"], ["v", "v"], ["w", "v"]], {"p0": ["w"]}, {"p0": []})
    assert validate_nc(M).first.kind == "valuation persistence"


def test_verbatim_conditional_clause_breaks_persistence():
    # w <= v; only v sees a successor under the antecedent's bi-set, and it refutes p0
    M = nc(["w", "v"], [["w", "w"], ["v", "v"], ["w", "v"]], {"p0": [], "p1": []}, {"p0": [], "p1": []},
           [["v", [[], []], "v"]])
    assert validate_nc(M).ok
    phi = C("p1 []> p0")
    assert eval_nc(M, "w", phi, boxto_verbatim=True)
    assert not eval_nc(M, "v", phi, boxto_verbatim=True)
    # the default clause looks at every world above, so truth persists
    assert not eval_nc(M, "w", phi)


def kripke(domain, p0, rel):
    return model({"kind": "kripke-modal", "signature": ["p0", "E"], "domain": domain,
                  "interp": {"p0": p0, "E": rel}})


@given(formulas("md", nprops=1))
def test_box_without_successors(phi):
    from lmw.syntax import md
    assert eval_m(kripke(["w"], [], []), "w", md.Box(phi))


def test_reflexive_point():
    assert eval_m(kripke(["w"], [["w"]], [["w", "w"]]), "w", parse_md("[]p0 & <>p0"))
