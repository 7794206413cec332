"""Variable machinery, normal forms and structural queries on formulas."""

from __future__ import annotations

from typing import Iterator

from ..errors import CaptureError
from . import cn, fo, md
from .base import Node, PredSym, Var
from .fo import And, Eq, Exists, FoFormula, Forall, Imp, Neg, Or, Pred

TRIV = Eq(Var(0), Var(0))


def free_vars(phi: FoFormula) -> frozenset[Var]:
    """FV(phi); cached on the node."""
    cached = phi.__dict__.get("_fv")
    if cached is None:
        cached = _free_vars(phi)
        phi.__dict__["_fv"] = cached
    return cached


def _free_vars(phi: FoFormula) -> frozenset[Var]:
    if isinstance(phi, Pred):
        return frozenset(phi.args)
    if isinstance(phi, Eq):
        return frozenset((phi.left, phi.right))
    if isinstance(phi, Neg):
        return free_vars(phi.body)
    if isinstance(phi, (And, Or, Imp)):
        return free_vars(phi.left) | free_vars(phi.right)
    if isinstance(phi, (Forall, Exists)):
        return free_vars(phi.body) - {phi.var}
    raise TypeError(f"not a first-order formula: {phi!r}")


def fv_key(phi: FoFormula) -> tuple[Var, ...]:
    """FV(phi) in index order; the memo key layout for evaluators."""
    cached = phi.__dict__.get("_fvk")
    if cached is None:
        cached = tuple(sorted(free_vars(phi)))
        phi.__dict__["_fvk"] = cached
    return cached


def all_vars(phi: FoFormula) -> frozenset[Var]:
    """Every variable occurring in phi, free or bound."""
    if isinstance(phi, (Pred, Eq)):
        return free_vars(phi)
    if isinstance(phi, (Forall, Exists)):
        return all_vars(phi.body) | {phi.var}
    out: frozenset[Var] = frozenset()
    for child in phi.children():
        out |= all_vars(child)
    return out


def bound_vars(phi: FoFormula) -> frozenset[Var]:
    if isinstance(phi, (Pred, Eq)):
        return frozenset()
    if isinstance(phi, (Forall, Exists)):
        return bound_vars(phi.body) | {phi.var}
    out: frozenset[Var] = frozenset()
    for child in phi.children():
        out |= bound_vars(child)
    return out


def substitutable(phi: FoFormula, x: Var, y: Var) -> bool:
    """True iff no free occurrence of x in phi lies in the scope of a binder on y."""
    if isinstance(phi, (Pred, Eq)):
        return True
    if isinstance(phi, Neg):
        return substitutable(phi.body, x, y)
    if isinstance(phi, (And, Or, Imp)):
        return substitutable(phi.left, x, y) and substitutable(phi.right, x, y)
    if isinstance(phi, (Forall, Exists)):
        if phi.var == x:
            return True
        if phi.var == y and x in free_vars(phi.body):
            return False
        return substitutable(phi.body, x, y)
    raise TypeError(f"not a first-order formula: {phi!r}")


def subst_var(phi: FoFormula, x: Var, y: Var) -> FoFormula:
    """phi[x/y]: replace the free occurrences of x by y."""
    if not substitutable(phi, x, y):
        raise CaptureError(f"{y} is not substitutable for {x}")
    if x == y:
        return phi
    return _subst(phi, x, y)


def _subst(phi: FoFormula, x: Var, y: Var) -> FoFormula:
    if x not in free_vars(phi):
        return phi
    if isinstance(phi, Pred):
        return Pred(phi.sym, tuple(y if a == x else a for a in phi.args))
    if isinstance(phi, Eq):
        return Eq(y if phi.left == x else phi.left, y if phi.right == x else phi.right)
    if isinstance(phi, Neg):
        return Neg(_subst(phi.body, x, y))
    if isinstance(phi, (And, Or, Imp)):
        return type(phi)(_subst(phi.left, x, y), _subst(phi.right, x, y))
    # quantifier whose variable differs from x (otherwise x is not free)
    return type(phi)(phi.var, _subst(phi.body, x, y))


def is_literal(phi: FoFormula) -> bool:
    return isinstance(phi, (Pred, Eq)) or (
        isinstance(phi, Neg) and isinstance(phi.body, (Pred, Eq))
    )


def nnf(phi: FoFormula) -> FoFormula:
    """Negation normal form by the standard recursion; ``~~`` cancels."""
    if is_literal(phi):
        return phi
    if isinstance(phi, (And, Or, Imp)):
        return type(phi)(nnf(phi.left), nnf(phi.right))
    if isinstance(phi, (Forall, Exists)):
        return type(phi)(phi.var, nnf(phi.body))
    assert isinstance(phi, Neg)
    inner = phi.body
    if isinstance(inner, Neg):
        return nnf(inner.body)
    if isinstance(inner, And):
        return Or(nnf(Neg(inner.left)), nnf(Neg(inner.right)))
    if isinstance(inner, Or):
        return And(nnf(Neg(inner.left)), nnf(Neg(inner.right)))
    if isinstance(inner, Imp):
        return And(nnf(inner.left), nnf(Neg(inner.right)))
    if isinstance(inner, Forall):
        return Exists(inner.var, nnf(Neg(inner.body)))
    if isinstance(inner, Exists):
        return Forall(inner.var, nnf(Neg(inner.body)))
    raise TypeError(f"not a first-order formula: {phi!r}")


def is_nnf(phi: FoFormula) -> bool:
    """Every strong negation applies directly to an atom."""
    if isinstance(phi, Neg):
        return isinstance(phi.body, (Pred, Eq))
    return all(is_nnf(c) for c in phi.children())


def iter_subformulas(phi: Node) -> Iterator[Node]:
    """Pre-order walk over every subformula occurrence, phi first."""
    stack = [phi]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children()))


def subformulas(phi: Node) -> set[Node]:
    """Sub(phi), including phi itself."""
    return set(iter_subformulas(phi))


def replace_triv(chi: FoFormula, psi: FoFormula) -> FoFormula:
    """chi/psi: every occurrence of the atom ``v0 = v0`` becomes psi, binders included."""
    if isinstance(chi, Eq):
        return psi if chi == TRIV else chi
    if isinstance(chi, Pred):
        return chi
    if isinstance(chi, Neg):
        return Neg(replace_triv(chi.body, psi))
    if isinstance(chi, (And, Or, Imp)):
        return type(chi)(replace_triv(chi.left, psi), replace_triv(chi.right, psi))
    if isinstance(chi, (Forall, Exists)):
        return type(chi)(chi.var, replace_triv(chi.body, psi))
    raise TypeError(f"not a first-order formula: {chi!r}")


def depth(phi: Node) -> int:
    """Nesting depth; atoms have depth 0."""
    kids = phi.children()
    return 0 if not kids else 1 + max(depth(k) for k in kids)


def size(phi: Node) -> int:
    return sum(1 for _ in iter_subformulas(phi))


def predicates(phi: Node) -> frozenset[PredSym]:
    """Predicate symbols occurring in a formula of any of the three languages; cached on the node."""
    cached = phi.__dict__.get("_preds")
    if cached is None:
        sym = getattr(phi, "sym", None)
        cached = frozenset({sym} if sym is not None else ()).union(*(predicates(k) for k in phi.children()))
        phi.__dict__["_preds"] = cached
    return cached


def is_sentence(phi: FoFormula) -> bool:
    return not free_vars(phi)


def has_strong_negation(phi: Node) -> bool:
    negs = (fo.Neg, cn.Neg, md.Neg)
    return any(isinstance(n, negs) for n in iter_subformulas(phi))


def conj(*parts: FoFormula) -> FoFormula:
    """Left-nested conjunction of one or more formulas."""
    out = parts[0]
    for p in parts[1:]:
        out = fo.And(out, p)
    return out
