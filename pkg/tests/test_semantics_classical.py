from pathlib import Path

import pytest
from hypothesis import given

from lmw.semantics.classical import ClassicalModel, eval_biset_c, eval_c, is_homomorphism
from lmw.syntax.base import O, R, S, E, Signature, Var, prop
from lmw.text.formulas import parse_fo, print_formula
from lmw.theories import th_ck

from .strategies import formulas, models

F = parse_fo
v0 = Var(0)
P0, P1 = prop(0), prop(1)
ONE = ClassicalModel.build(["a"], {P0: {("a",)}, P1: set()})


def test_atoms_and_negation():
    assert eval_c(ONE, {v0: "a"}, F("p0(v0)"))
    assert not eval_c(ONE, {v0: "a"}, F("~p0(v0)"))


def test_existential_over_two_elements():
    M = ClassicalModel.build(["a", "b"], {E: {("a", "b")}})
    phi = F("exists v1 . E(v0,v1)")
    assert eval_c(M, {v0: "a"}, phi)
    assert not eval_c(M, {v0: "b"}, phi)


def test_biset_evaluation():
    f = {v0: "a"}
    assert eval_biset_c(ONE, f, [], [])
    assert not eval_biset_c(ONE, f, [F("p0(v0)")], [F("p0(v0)")])
    assert eval_biset_c(ONE, f, [F("p0(v0)")], [F("p1(v0)")])


def test_homomorphisms():
    N = ClassicalModel.build(["x", "y"], {P0: {("x",)}, P1: set()})
    assert is_homomorphism({"a": "a"}, ONE, ONE)
    assert not is_homomorphism({"a": "y"}, ONE, N)
    empty = ClassicalModel.build(["a", "b"], {P0: set()})
    assert is_homomorphism({"a": "b", "b": "b"}, empty, empty)


@given(models("classical"), formulas("fo"))
def test_strong_negation_is_complement_classically(M, phi):
    from lmw.syntax.fo import Neg
    from lmw.syntax.ops import free_vars

    f = {x: M.domain[0] for x in free_vars(phi)}
    assert eval_c(M, f, Neg(phi)) is (not eval_c(M, f, phi))


def _sig(n):
    return Signature.of([S, O, E, R] + [prop(i) for i in range(n)])


def test_classical_theory_sizes():
    assert len(th_ck(_sig(1))) == 5
    assert len(th_ck(_sig(3))) == 7


def test_extensionality_golden():
    golden = (Path(__file__).parent / "golden" / "thc1.txt").read_text().strip()
    assert print_formula(th_ck(_sig(1))[0]) == golden
