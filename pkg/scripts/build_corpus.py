"""Regenerate the shipped proof corpus from builder scripts."""

from pathlib import Path

from lmw.proofs.builder import ProofBuilder
from lmw.proofs.checker import Consecution, check_consecution, check_derivation
from lmw.proofs.document import dumps_proof
from lmw.syntax.base import Var
from lmw.syntax.derived import ampersand, equiv, strong_equiv
from lmw.text.formulas import parse_cn, parse_fo

OUT = Path(__file__).resolve().parents[1] / "src" / "lmw" / "proofs" / "corpus"
v0, v1 = Var(0), Var(1)


def psi_to_psi():
    b = ProofBuilder("ilp")
    b.imp_self(parse_fo("p0(v0)"))
    return "identity", "p0(v0) -> p0(v0) from two instances of a1 and one of a2", b.build()


def _strong_refl(b, phi):
    L = b.L
    i = b.imp_self(phi)
    j = b.imp_self(L.Neg(phi))
    half = b.conj_intro(i, j)
    k = b.conj_intro(half, half)
    assert b.formula(k) == strong_equiv(phi, phi)
    return k


def t5():
    b = ProofBuilder("qn4")
    _strong_refl(b, parse_fo("forall v0 . p0(v0)"))
    return "strong-reflexivity", "phi <=> phi, phi = forall v0 . p0(v0)", b.build()


def t8():
    b = ProofBuilder("qn4")
    phi = parse_fo("p0(v0)")
    L = b.L
    outer = b.ax("An1", phi=phi)                  # ~~phi <-> phi
    inner = b.ax("An1", phi=L.Neg(phi))           # ~~~phi <-> ~phi
    dn_out = b.and_left(outer)                    # ~~phi -> phi
    dn_in = b.and_right(outer)                    # phi -> ~~phi
    tn_out = b.and_left(inner)                    # ~~~phi -> ~phi
    tn_in = b.and_right(inner)                    # ~phi -> ~~~phi
    first = b.conj_intro(dn_out, tn_in)
    second = b.conj_intro(dn_in, tn_out)
    k = b.conj_intro(first, second)
    assert b.formula(k) == strong_equiv(L.Neg(L.Neg(phi)), phi)
    return "double-negation", "~~phi <=> phi, phi = p0(v0)", b.build()


def t15():
    b = ProofBuilder("n4ck")
    phi, psi = parse_cn("p0"), parse_cn("p1 []> p2")
    L = b.L
    an4 = b.ax("An4", phi=phi, psi=L.Neg(psi))    # ~(phi -> ~psi) <-> (phi & ~~psi)
    an1 = b.ax("An1", phi=psi)                    # ~~psi <-> psi
    amp_to = b.and_left(an4)
    to_amp = b.and_right(an4)
    dn_out = b.and_left(an1)
    dn_in = b.and_right(an1)
    both = L.And(phi, L.Neg(L.Neg(psi)))
    plain = L.And(phi, psi)
    # (phi & ~~psi) -> (phi & psi)
    l = b.ax("a3", phi=phi, psi=L.Neg(L.Neg(psi)))
    r = b.hyp_syll(b.ax("a4", phi=phi, psi=L.Neg(L.Neg(psi))), dn_out)
    fwd = b.imp_conj(l, r)
    # (phi & psi) -> (phi & ~~psi)
    l = b.ax("a3", phi=phi, psi=psi)
    r = b.hyp_syll(b.ax("a4", phi=phi, psi=psi), dn_in)
    bwd = b.imp_conj(l, r)
    assert b.formula(fwd) == L.Imp(both, plain) and b.formula(bwd) == L.Imp(plain, both)
    k = b.conj_intro(b.hyp_syll(amp_to, fwd), b.hyp_syll(bwd, to_amp))
    assert b.formula(k) == equiv(ampersand(phi, psi), plain)
    return "ampersand-conjunction", "(phi &&& psi) <-> (phi & psi), phi = p0, psi = p1 []> p2", b.build()


def forall_exists():
    b = ProofBuilder("qilp")
    phi = parse_fo("E(v0,v1)")
    i = b.ax("a9", phi=phi, x=v0, y=v0)
    j = b.ax("a10", phi=phi, x=v0, y=v0)
    b.hyp_syll(i, j)
    return "forall-exists", "(forall v0 . E(v0,v1)) -> exists v0 . E(v0,v1)", b.build()


def quantifier_rules():
    b = ProofBuilder("qn4")
    phi = parse_fo("p0(v0)")
    i = b.ax("a9", phi=phi, x=v0, y=v1)           # forall v0 . p0(v0) -> p0(v1)
    b.rall(i, v0, v1)                             # forall v0 . p0(v0) -> forall v0 . p0(v0)
    j = b.ax("a10", phi=phi, x=v0, y=v1)          # p0(v1) -> exists v0 . p0(v0)
    b.rex(j, v0, v1)                              # exists v0 . p0(v0) -> exists v0 . p0(v0)
    return "quantifier-rules", "generalisation of instances with both quantifier rules", b.build()


def conditional_rules():
    b = ProofBuilder("n4ck")
    L = b.L
    p0, p1, p2 = parse_cn("p0"), parse_cn("p1"), parse_cn("p2")
    k = _strong_refl(b, p0)
    b.rabox(k, p1)
    i = b.imp_self(p1)
    b.rcbox1(b.conj_intro(i, i), p0)
    n = b.imp_self(L.Neg(p2))
    b.rcbox2(b.conj_intro(n, n), p0)
    b.ax("Ax4", phi=p0, psi=p1)
    return "conditional-rules", "antecedent and consequent replacement from reflexive equivalences", b.build()


def consecution():
    gamma = (parse_fo("p0(v0)"), parse_fo("p0(v0) -> p1(v0)"))
    delta = (parse_fo("p1(v0)"), parse_fo("p2(v0)"))
    b = ProofBuilder("ilp", gamma)
    i = b.mp(b.premise(1), b.premise(2))
    b.mp(i, b.ax("a6", phi=delta[0], psi=delta[1]))
    return "modus-ponens-consecution", "p0, p0 -> p1 |- p1, p2", Consecution(gamma, delta, b.build())


def main():
    OUT.mkdir(exist_ok=True)
    for make in (psi_to_psi, t5, t8, t15, forall_exists, quantifier_rules, conditional_rules, consecution):
        name, what, doc = make()
        if isinstance(doc, Consecution):
            check_consecution(doc)
        else:
            check_derivation(doc)
        (OUT / f"{name}.lmw").write_text(f"# {what}\n" + dumps_proof(doc), encoding="utf-8")
        print(name)


if __name__ == "__main__":
    main()
