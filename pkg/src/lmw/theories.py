"""First-order theories describing the set structure of conditional models.

Variable roles are fixed: x=v0, y=v1, z=v2, w=v3, u=v4.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from .errors import MissingSymbol
from .syntax.base import E, O, R, S, PredSym, Signature, Var
from .syntax.derived import equiv, forall_o, strong_equiv
from .syntax.fo import And, Eq, Exists, FoFormula, Forall, Imp, Neg, Or, Pred

X, Y, Z, W, U = (Var(i) for i in range(5))

BASE = "base"
I_EXTENSION = "i-extension"


@dataclass(frozen=True)
class Theory:
    """An ordered list of sentences with a label per sentence."""

    sentences: tuple[FoFormula, ...]
    labels: tuple[str, ...]

    def __iter__(self) -> Iterator[FoFormula]:
        return iter(self.sentences)

    def __len__(self) -> int:
        return len(self.sentences)

    def __getitem__(self, i: int) -> FoFormula:
        return self.sentences[i]

    def items(self) -> Iterator[tuple[str, FoFormula]]:
        return zip(self.labels, self.sentences)

    def __add__(self, other: Theory) -> Theory:
        return Theory(self.sentences + other.sentences, self.labels + other.labels)


def _a(sym: PredSym, *args: Var) -> Pred:
    return Pred(sym, args)


def _require(sig: Signature) -> tuple[PredSym, ...]:
    for sym in (S, O, E, R):
        if sym not in sig:
            raise MissingSymbol(f"signature lacks {sym.name}")
    return sig.props


def _set_theory(sig: Signature, enc: Callable[[FoFormula, FoFormula], FoFormula], prefix: str,
                th4_ops: tuple[str, ...]) -> Theory:
    props = _require(sig)
    sx, sy, sz = _a(S, X), _a(S, Y), _a(S, Z)

    def new_set(var: Var, body: FoFormula) -> FoFormula:
        # exists z (S z & forall_O w (E(w,z) ~ body))
        return Exists(Z, And(sz, forall_o(var, enc(_a(E, var, Z), body))))

    out: list[tuple[str, FoFormula]] = []
    same = forall_o(Z, enc(_a(E, Z, X), _a(E, Z, Y)))
    out.append((f"{prefix}extensionality",
                Forall(X, Forall(Y, Imp(And(And(sx, sy), same), Eq(X, Y))))))
    for p in props:
        out.append((f"{prefix}prop-set[{p.name}]",
                    Exists(X, And(sx, forall_o(Y, enc(_a(E, Y, X), _a(p, Y)))))))
    complement = Exists(Y, And(sy, forall_o(Z, enc(_a(E, Z, Y), Neg(_a(E, Z, X))))))
    out.append((f"{prefix}complement", Forall(X, Imp(sx, complement))))
    both = And(sx, sy)
    for op in th4_ops:
        body = And(_a(E, W, X), _a(E, W, Y)) if op == "&" else Imp(_a(E, W, X), _a(E, W, Y))
        label = f"{prefix}meet" if op == "&" else f"{prefix}implication"
        out.append((label, Forall(X, Forall(Y, Imp(both, new_set(W, body))))))
    image = Forall(U, Imp(_a(R, W, X, U), _a(E, U, Y)))
    out.append((f"{prefix}conditional-image", Forall(X, Forall(Y, Imp(both, new_set(W, image))))))
    return Theory(tuple(f for _, f in out), tuple(name for name, _ in out))


def th_ck(sig: Signature) -> Theory:
    """The classical set theory: encodings use plain equivalence."""
    return _set_theory(sig, equiv, "ck:", ("&",))


def th_i_extra(sig: Signature) -> Theory:
    """Sort axioms separating objects from sets."""
    props = _require(sig)
    out: list[tuple[str, FoFormula]] = [
        ("i:set-or-object", Forall(X, Or(_a(S, X), _a(O, X)))),
        ("i:not-both", Forall(X, Neg(And(_a(S, X), _a(O, X))))),
    ]
    for p in props:
        out.append((f"i:prop-objects[{p.name}]", Forall(X, Imp(_a(p, X), _a(O, X)))))
    out.append(("i:membership-sorts", Forall(X, Forall(Y, Imp(_a(E, X, Y), And(_a(O, X), _a(S, Y)))))))
    out.append(("i:accessibility-sorts", Forall(X, Forall(Y, Forall(Z, Imp(
        _a(R, X, Y, Z), And(And(_a(O, X), _a(S, Y)), _a(O, Z))))))))
    return Theory(tuple(f for _, f in out), tuple(name for name, _ in out))


def th_n4(sig: Signature, variant: str = BASE) -> Theory:
    """The Nelsonian set theory: encodings use strong equivalence."""
    base = _set_theory(sig, strong_equiv, "", ("&", "->"))
    if variant == BASE:
        return base
    if variant == I_EXTENSION:
        return base + th_i_extra(sig)
    raise ValueError(f"unknown theory variant {variant!r}")
