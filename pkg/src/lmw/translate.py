"""Translations between the formula languages.

Companion variables follow a fixed arithmetic scheme so every translation is a
deterministic function: the modal companion of ``v_i`` is ``v_{i+1}`` and the
conditional companions of ``v_i`` are ``v_{3i+1}, v_{3i+2}, v_{3i+3}``.  The
conditional triples for distinct sources are disjoint and always lie above
their source, so nested translations never capture a variable.
"""

from __future__ import annotations

from .errors import DiamondInBoxOnly, NotInImage
from .syntax import cn, md
from .syntax.base import E, EPS, R, S, Var
from .syntax.derived import ampersand, equiv, forall_o, strong_equiv
from .syntax.fo import And, Eq, Exists, FoFormula, Forall, Imp, Neg, Or, Pred

BOX_ONLY = "box-only"
VARIANT_I = "i"
VARIANT_J = "j"
MODAL_VARIANTS = (BOX_ONLY, VARIANT_I, VARIANT_J)


def modal_companion(x: Var) -> Var:
    return Var(x.index + 1)


def conditional_companions(x: Var) -> tuple[Var, Var, Var]:
    i = x.index
    return Var(3 * i + 1), Var(3 * i + 2), Var(3 * i + 3)


# signed embedding

_DUAL_BINARY = {And: Or, Or: And}
_DUAL_QUANT = {Forall: Exists, Exists: Forall}


def tr_n4(phi: FoFormula) -> FoFormula:
    """Embed the language with strong negation into the signed positive language."""
    if isinstance(phi, Pred):
        return Pred(phi.sym.plus(), phi.args)
    if isinstance(phi, Eq):
        return phi
    if isinstance(phi, (And, Or, Imp)):
        return type(phi)(tr_n4(phi.left), tr_n4(phi.right))
    if isinstance(phi, (Forall, Exists)):
        return type(phi)(phi.var, tr_n4(phi.body))
    if not isinstance(phi, Neg):
        raise TypeError(f"not a first-order formula: {phi!r}")
    inner = phi.body
    if isinstance(inner, Pred):
        return Pred(inner.sym.minus(), inner.args)
    if isinstance(inner, Eq):
        return Pred(EPS, (inner.left, inner.right))
    if isinstance(inner, Neg):
        return tr_n4(inner.body)
    if isinstance(inner, (And, Or)):
        return _DUAL_BINARY[type(inner)](tr_n4(Neg(inner.left)), tr_n4(Neg(inner.right)))
    if isinstance(inner, Imp):
        return And(tr_n4(inner.left), tr_n4(Neg(inner.right)))
    if isinstance(inner, (Forall, Exists)):
        return _DUAL_QUANT[type(inner)](inner.var, tr_n4(Neg(inner.body)))
    raise TypeError(f"not a first-order formula: {phi!r}")


def tr_inverse(psi: FoFormula) -> FoFormula:
    """Decode a signed positive formula back to negation normal form."""
    if isinstance(psi, Pred):
        if psi.sym == EPS:
            return Neg(Eq(psi.args[0], psi.args[1]))
        if psi.sym.kind == "positive":
            return Pred(psi.sym.base(), psi.args)
        if psi.sym.kind == "negative":
            return Neg(Pred(psi.sym.base(), psi.args))
        raise NotInImage(f"{psi.sym.name} is not a signed symbol")
    if isinstance(psi, Eq):
        return psi
    if isinstance(psi, (And, Or, Imp)):
        return type(psi)(tr_inverse(psi.left), tr_inverse(psi.right))
    if isinstance(psi, (Forall, Exists)):
        return type(psi)(psi.var, tr_inverse(psi.body))
    if isinstance(psi, Neg):
        raise NotInImage("strong negation does not occur in signed images")
    raise TypeError(f"not a first-order formula: {psi!r}")


# modal standard translation


def st_modal(x: Var, phi: md.MdFormula, variant: str = BOX_ONLY) -> FoFormula:
    if variant not in MODAL_VARIANTS:
        raise ValueError(f"unknown modal translation variant {variant!r}")
    return _st_modal(x, phi, variant)


def _st_modal(x: Var, phi: md.MdFormula, variant: str) -> FoFormula:
    if isinstance(phi, md.Prop):
        return Pred(phi.sym, (x,))
    if isinstance(phi, md.Neg):
        return Neg(_st_modal(x, phi.body, variant))
    if isinstance(phi, (md.And, md.Or, md.Imp)):
        op = {md.And: And, md.Or: Or, md.Imp: Imp}[type(phi)]
        return op(_st_modal(x, phi.left, variant), _st_modal(x, phi.right, variant))
    y = modal_companion(x)
    if isinstance(phi, md.Box):
        return Forall(y, Imp(Pred(E, (x, y)), _st_modal(y, phi.body, variant)))
    if isinstance(phi, md.Diamond):
        if variant == BOX_ONLY:
            raise DiamondInBoxOnly("the box-only translation has no diamond clause")
        body = _st_modal(y, phi.body, variant)
        if variant == VARIANT_I:
            return Exists(y, And(Pred(E, (x, y)), body))
        return Neg(Forall(y, Imp(Pred(E, (x, y)), Neg(body))))
    raise TypeError(f"not a modal formula: {phi!r}")


# conditional standard translations


def st_ck(x: Var, phi: cn.CnFormula) -> FoFormula:
    """Classical standard translation of the conditional language."""
    return _st_cond(x, phi, equiv, And)


def st_n4ck(x: Var, phi: cn.CnFormula) -> FoFormula:
    """Nelsonian standard translation: strong equivalence and the ampersand in the conditional clause."""
    return _st_cond(x, phi, strong_equiv, ampersand)


def set_encoding(y: Var, z: Var, body: FoFormula, enc) -> FoFormula:
    """S(y) & (forall z)_O (E(z,y) ~ body), with ``enc`` the chosen equivalence."""
    return And(Pred(S, (y,)), forall_o(z, enc(Pred(E, (z, y)), body)))


def _st_cond(x: Var, phi: cn.CnFormula, enc, main) -> FoFormula:
    if isinstance(phi, cn.Prop):
        return Pred(phi.sym, (x,))
    if isinstance(phi, cn.Neg):
        return Neg(_st_cond(x, phi.body, enc, main))
    if isinstance(phi, (cn.And, cn.Or, cn.Imp)):
        op = {cn.And: And, cn.Or: Or, cn.Imp: Imp}[type(phi)]
        return op(_st_cond(x, phi.left, enc, main), _st_cond(x, phi.right, enc, main))
    if isinstance(phi, cn.BoxTo):
        y, z, w = conditional_companions(x)
        ante = set_encoding(y, z, _st_cond(z, phi.left, enc, main), enc)
        cons = Forall(w, Imp(Pred(R, (x, y, w)), _st_cond(w, phi.right, enc, main)))
        return Exists(y, main(ante, cons))
    raise TypeError(f"not a conditional formula: {phi!r}")


TRANSLATIONS = ("tr", "st-modal", "st-modal-i", "st-modal-j", "st-ck", "st-n4ck")
