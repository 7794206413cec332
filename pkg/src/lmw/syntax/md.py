"""Propositional modal formulas with strong negation, box and (optionally) diamond."""

from __future__ import annotations

from dataclasses import dataclass

from .base import Node, PredSym


class MdFormula(Node):
    """Base class of modal formula nodes."""


@dataclass(frozen=True, eq=False)
class Prop(MdFormula):
    sym: PredSym

    def __post_init__(self) -> None:
        if self.sym.kind != "prop":
            raise ValueError(f"{self.sym.name} is not a propositional letter")


@dataclass(frozen=True, eq=False)
class And(MdFormula):
    left: MdFormula
    right: MdFormula


@dataclass(frozen=True, eq=False)
class Or(MdFormula):
    left: MdFormula
    right: MdFormula


@dataclass(frozen=True, eq=False)
class Imp(MdFormula):
    left: MdFormula
    right: MdFormula


@dataclass(frozen=True, eq=False)
class Neg(MdFormula):
    body: MdFormula


@dataclass(frozen=True, eq=False)
class Box(MdFormula):
    body: MdFormula


@dataclass(frozen=True, eq=False)
class Diamond(MdFormula):
    """Primitive diamond; only legal in the diamond dialect."""

    body: MdFormula


BINARY = (And, Or, Imp)

BOX_ONLY = "box"
WITH_DIAMOND = "diamond"
DIALECTS = (BOX_ONLY, WITH_DIAMOND)


def has_diamond(phi: MdFormula) -> bool:
    if isinstance(phi, Diamond):
        return True
    return any(has_diamond(c) for c in phi.children())
