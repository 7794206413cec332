"""Propositional conditional formulas with strong negation and ``[]>``."""

from __future__ import annotations

from dataclasses import dataclass

from .base import Node, PredSym


class CnFormula(Node):
    """Base class of conditional formula nodes."""


@dataclass(frozen=True, eq=False)
class Prop(CnFormula):
    sym: PredSym

    def __post_init__(self) -> None:
        if self.sym.kind != "prop":
            raise ValueError(f"{self.sym.name} is not a propositional letter")


@dataclass(frozen=True, eq=False)
class And(CnFormula):
    left: CnFormula
    right: CnFormula


@dataclass(frozen=True, eq=False)
class Or(CnFormula):
    left: CnFormula
    right: CnFormula


@dataclass(frozen=True, eq=False)
class Imp(CnFormula):
    left: CnFormula
    right: CnFormula


@dataclass(frozen=True, eq=False)
class Neg(CnFormula):
    body: CnFormula


@dataclass(frozen=True, eq=False)
class BoxTo(CnFormula):
    """The conditional ``antecedent []> consequent``."""

    left: CnFormula
    right: CnFormula


BINARY = (And, Or, Imp, BoxTo)
