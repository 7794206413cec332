"""First-order formulas over a relational signature with equality."""

from __future__ import annotations

from dataclasses import dataclass

from .base import Node, PredSym, Var


class FoFormula(Node):
    """Base class of first-order formula nodes."""


@dataclass(frozen=True, eq=False)
class Pred(FoFormula):
    sym: PredSym
    args: tuple[Var, ...]

    def __post_init__(self) -> None:
        if len(self.args) != self.sym.arity:
            raise ValueError(
                f"{self.sym.name} takes {self.sym.arity} arguments, got {len(self.args)}"
            )


@dataclass(frozen=True, eq=False)
class Eq(FoFormula):
    left: Var
    right: Var


@dataclass(frozen=True, eq=False)
class And(FoFormula):
    left: FoFormula
    right: FoFormula


@dataclass(frozen=True, eq=False)
class Or(FoFormula):
    left: FoFormula
    right: FoFormula


@dataclass(frozen=True, eq=False)
class Imp(FoFormula):
    left: FoFormula
    right: FoFormula


@dataclass(frozen=True, eq=False)
class Neg(FoFormula):
    """Strong negation ``~``."""

    body: FoFormula


@dataclass(frozen=True, eq=False)
class Forall(FoFormula):
    var: Var
    body: FoFormula


@dataclass(frozen=True, eq=False)
class Exists(FoFormula):
    var: Var
    body: FoFormula


ATOMS = (Pred, Eq)
BINARY = (And, Or, Imp)
QUANTIFIERS = (Forall, Exists)


def atom(sym: PredSym, *args: Var | int) -> Pred:
    """Convenience constructor: ``atom(E, 0, 1)`` is ``E(v0,v1)``."""
    return Pred(sym, tuple(a if isinstance(a, Var) else Var(a) for a in args))


def eq(x: Var | int, y: Var | int) -> Eq:
    return Eq(x if isinstance(x, Var) else Var(x), y if isinstance(y, Var) else Var(y))
