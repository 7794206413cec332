"""Derived connectives, expanded into primitive syntax.

All macros work uniformly on the first-order and conditional languages; the
modal language takes the propositional ones too.
"""

from __future__ import annotations

from types import ModuleType

from . import cn, fo, md
from .base import Node, O, Var

STRONG_IMP = "strong-imp"
STRONG_EQUIV = "strong-equiv"
AMPERSAND = "ampersand"
EQUIV = "equiv"
KINDS = (STRONG_IMP, STRONG_EQUIV, AMPERSAND, EQUIV)


def language_of(phi: Node) -> ModuleType:
    if isinstance(phi, fo.FoFormula):
        return fo
    if isinstance(phi, cn.CnFormula):
        return cn
    if isinstance(phi, md.MdFormula):
        return md
    raise TypeError(f"not a formula: {phi!r}")


def strong_imp(phi: Node, psi: Node) -> Node:
    """phi => psi  :=  (phi -> psi) & (~psi -> ~phi)."""
    L = language_of(phi)
    return L.And(L.Imp(phi, psi), L.Imp(L.Neg(psi), L.Neg(phi)))


def strong_equiv(phi: Node, psi: Node) -> Node:
    """phi <=> psi  :=  (phi => psi) & (psi => phi)."""
    L = language_of(phi)
    return L.And(strong_imp(phi, psi), strong_imp(psi, phi))


def ampersand(phi: Node, psi: Node) -> Node:
    """phi &&& psi  :=  ~(phi -> ~psi)."""
    L = language_of(phi)
    return L.Neg(L.Imp(phi, L.Neg(psi)))


def equiv(phi: Node, psi: Node) -> Node:
    """phi <-> psi  :=  (phi -> psi) & (psi -> phi)."""
    L = language_of(phi)
    return L.And(L.Imp(phi, psi), L.Imp(psi, phi))


_EXPANDERS = {
    STRONG_IMP: strong_imp,
    STRONG_EQUIV: strong_equiv,
    AMPERSAND: ampersand,
    EQUIV: equiv,
}


def expand_derived(kind: str, phi: Node, psi: Node) -> Node:
    try:
        expander = _EXPANDERS[kind]
    except KeyError:
        raise ValueError(f"unknown derived connective {kind!r}; expected one of {KINDS}") from None
    if language_of(phi) is not language_of(psi):
        raise TypeError("operands belong to different languages")
    return expander(phi, psi)


def expand_diamondto(phi: cn.CnFormula, psi: cn.CnFormula) -> cn.CnFormula:
    """phi <>-> psi  :=  ~(phi []> ~psi)."""
    return cn.Neg(cn.BoxTo(phi, cn.Neg(psi)))


def match_diamondto(phi: cn.CnFormula) -> tuple[cn.CnFormula, cn.CnFormula] | None:
    """Inverse of :func:`expand_diamondto` on its output shape."""
    if (
        isinstance(phi, cn.Neg)
        and isinstance(phi.body, cn.BoxTo)
        and isinstance(phi.body.right, cn.Neg)
    ):
        return phi.body.left, phi.body.right.body
    return None


def forall_o(x: Var, phi: fo.FoFormula) -> fo.FoFormula:
    """The relativised quantifier: forall x (O(x) -> phi)."""
    return fo.Forall(x, fo.Imp(fo.Pred(O, (x,)), phi))
