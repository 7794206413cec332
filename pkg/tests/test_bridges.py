import pytest
from hypothesis import given, settings

from lmw.bridges import (
    PairedWorld, SHEAF_WORLD, check_comprehension, ck_to_classical, classical_to_ck, materialize, nc_sheafify,
    sheaf_to_nc, witness_name, xi_holds,
)
from lmw.errors import SizeCap, TheoryNotSatisfied
from lmw.semantics.classical import ClassicalModel, eval_c
from lmw.semantics.conditional import NcModel, eval_ck, eval_nc, truthset_nc, validate_nc
from lmw.semantics.sheaf import check_th, eval_n
from lmw.syntax.base import E, O, R, S, Var, prop
from lmw.syntax.ops import subformulas
from lmw.text.formulas import parse_cn
from lmw.theories import th_ck, th_n4
from lmw.translate import st_ck, st_n4ck

from .conftest import model
from .strategies import formulas, models

C = parse_cn
x = Var(0)


def test_classical_image_size():
    M = model({"kind": "ck", "signature": ["p0"], "worlds": ["a", "b"], "valuation": {"p0": ["a"]}, "rel": []})
    assert len(ck_to_classical(M).domain) == 6


@given(models("ck"), formulas("cn"))
def test_classical_image_satisfies_theory_and_translation(M, phi):
    Mc = ck_to_classical(M)
    assert all(eval_c(Mc, {}, s) for s in th_ck(Mc.signature))
    for w in M.worlds:
        assert eval_ck(M, w, phi) == eval_c(Mc, {x: w}, st_ck(x, phi))


@given(models("ck"), formulas("cn"))
def test_classical_round_trip(M, phi):
    back = classical_to_ck(ck_to_classical(M))
    for w in M.worlds:
        assert eval_ck(back, w, phi) == eval_ck(M, w, phi)


def test_no_sets_fails_the_theory():
    M = ClassicalModel.build(["a"], {S: set(), O: {("a",)}, E: set(), R: set(), prop(0): set()})
    with pytest.raises(TheoryNotSatisfied):
        classical_to_ck(M)


def test_ck_cap():
    worlds = [f"w{i}" for i in range(6)]
    M = model({"kind": "ck", "signature": ["p0"], "worlds": worlds, "valuation": {"p0": []}, "rel": []})
    with pytest.raises(SizeCap):
        ck_to_classical(M)


def nc2():
    return model({
        "kind": "nc", "signature": ["p0", "p1"], "worlds": ["w", "v"], "leq": [["w", "w"], ["v", "v"]],
        "valplus": {"p0": ["w"], "p1": ["w", "v"]}, "valminus": {"p0": ["v"], "p1": []},
        "rel": [["w", [["w"], ["v"]], "v"], ["v", [["w", "v"], []], "w"]]})


def test_sheafified_domain_and_theory():
    N = nc2()
    S_ = nc_sheafify(N)
    assert len(S_.domain(SHEAF_WORLD)) == 2 + 16
    assert check_th(S_, th_n4(S_.signature)).ok


@pytest.mark.parametrize("text, pos, neg", [
    ("p0", {"w"}, {"v"}),
    ("p0 & p1", {"w"}, {"v"}),
])
def test_comprehension_witnesses(text, pos, neg):
    N = nc2()
    c = check_comprehension(nc_sheafify(N), C(text))
    assert c.ok
    assert c.witnesses[SHEAF_WORLD] == witness_name(N, pos, neg)


def test_comprehension_for_a_conditional():
    N = nc2()
    phi = C("p0 []> p1")
    b = truthset_nc(N, phi)
    c = check_comprehension(nc_sheafify(N), phi)
    assert c.witnesses[SHEAF_WORLD] == witness_name(N, b.pos, b.neg)


def test_xi_on_one_world_reads_membership_rows():
    N = nc2()
    S_ = nc_sheafify(N)
    c = witness_name(N, {"w"}, {"v"})
    X, Y = {PairedWorld(SHEAF_WORLD, "w")}, {PairedWorld(SHEAF_WORLD, "v")}
    assert xi_holds(S_, SHEAF_WORLD, c, X, Y)
    assert not xi_holds(S_, SHEAF_WORLD, c, Y, X)


@settings(max_examples=40)
@given(models("nc", worlds=2), formulas("cn", 2))
def test_sheaf_reading_matches_translation(N, phi):
    S_ = nc_sheafify(N)
    M = sheaf_to_nc(S_)
    strict = NcModel(M.worlds, M.leq, M.valplus, M.valminus, M.accessor, strict=True)
    st = st_n4ck(x, phi)
    for pw in strict.worlds:
        for pol in "+-":
            assert eval_nc(strict, pw, phi, pol) == eval_n(S_, SHEAF_WORLD, {x: pw.element}, st, pol)
    keys = {(b.pos, b.neg) for psi in subformulas(phi) for b in [truthset_nc(strict, psi)]}
    assert validate_nc(strict, keys).ok
    if all(a == b for a, b in N.leq):
        for w in N.worlds:
            for pol in "+-":
                assert eval_nc(N, w, phi, pol) == eval_nc(M, PairedWorld(SHEAF_WORLD, w), phi, pol)


def test_single_world_sheaf_gives_discrete_order():
    M = sheaf_to_nc(nc_sheafify(nc2()))
    assert all(a == b for a, b in M.leq)


def test_materialized_copy_agrees():
    N = nc2()
    M = sheaf_to_nc(nc_sheafify(model({
        "kind": "nc", "signature": ["p0"], "worlds": ["w"], "leq": [["w", "w"]],
        "valplus": {"p0": ["w"]}, "valminus": {"p0": []}, "rel": [["w", [["w"], []], "w"]]})))
    E_ = materialize(M)
    for phi in ("p0 []> p0", "~(p0 []> ~p0)", "p0 -> (p0 []> p0)"):
        for pw in M.worlds:
            assert eval_nc(M, pw, C(phi)) == eval_nc(E_, str(pw), C(phi))
    with pytest.raises(SizeCap):
        materialize(sheaf_to_nc(nc_sheafify(N)))
