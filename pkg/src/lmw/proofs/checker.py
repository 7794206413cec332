"""Derivation and consecution checking for the Hilbert systems."""

from __future__ import annotations

from dataclasses import dataclass, field
from types import ModuleType
from typing import Union

from ..errors import BadConclusion, BadLine
from ..syntax import cn, fo
from ..syntax.base import Node, Var
from ..syntax.ops import free_vars, has_strong_negation, subst_var, substitutable
from .schemas import check_instance, match_schema, schema_id

_IL = ("a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8")
_QIL = _IL + ("a9", "a10", "a11", "a12")


@dataclass(frozen=True)
class System:
    name: str
    language: ModuleType
    schemas: tuple[str, ...]
    rules: tuple[str, ...]
    strong_negation: bool

    @property
    def formula_type(self) -> type:
        return fo.FoFormula if self.language is fo else cn.CnFormula


SYSTEMS: dict[str, System] = {
    "ilp": System("ilp", fo, _IL, ("mp",), False),
    "qilp": System("qilp", fo, _QIL, ("mp", "rall", "rex"), False),
    "qn4": System("qn4", fo, _QIL + ("An1", "An2", "An3", "An4", "An5", "An6"), ("mp", "rall", "rex"), True),
    "n4ck": System("n4ck", cn, _IL + ("An1", "An2", "An3", "An4", "Ax1", "Ax2", "Ax3", "Ax4"),
                   ("mp", "rabox", "rcbox1", "rcbox2"), True),
}


# justifications


@dataclass(frozen=True)
class AxiomInstance:
    schema: str
    bindings: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class Premise:
    index: int  # 1-based position in the premise list


@dataclass(frozen=True)
class MP:
    minor: int  # line holding phi
    major: int  # line holding phi -> psi


@dataclass(frozen=True)
class RForall:
    line: int
    x: Var
    y: Var


@dataclass(frozen=True)
class RExists:
    line: int
    x: Var
    y: Var


@dataclass(frozen=True)
class RABox:
    line: int


@dataclass(frozen=True)
class RCBox1:
    line: int


@dataclass(frozen=True)
class RCBox2:
    line: int


Justification = Union[AxiomInstance, Premise, MP, RForall, RExists, RABox, RCBox1, RCBox2]

_RULE_NAMES = {MP: "mp", RForall: "rall", RExists: "rex", RABox: "rabox", RCBox1: "rcbox1", RCBox2: "rcbox2"}


@dataclass(frozen=True)
class Derivation:
    """A numbered list of (formula, justification); lines are numbered from 1."""

    system: str
    premises: tuple[Node, ...]
    lines: tuple[tuple[Node, Justification], ...]


@dataclass(frozen=True)
class Consecution:
    gamma: tuple[Node, ...]
    delta: tuple[Node, ...]
    certificate: Derivation


# shape helpers


def _split_iff(phi: Node, L: ModuleType) -> tuple[Node, Node] | None:
    """(a, b) if phi is (a -> b) & (b -> a)."""
    if (isinstance(phi, L.And) and isinstance(phi.left, L.Imp) and isinstance(phi.right, L.Imp)
            and phi.left.left == phi.right.right and phi.left.right == phi.right.left):
        return phi.left.left, phi.left.right
    return None


def _split_siff(phi: Node, L: ModuleType) -> tuple[Node, Node] | None:
    """(a, b) if phi is the expansion of a <=> b."""
    if not isinstance(phi, L.And):
        return None
    halves = []
    for half in (phi.left, phi.right):
        if not (isinstance(half, L.And) and isinstance(half.left, L.Imp) and isinstance(half.right, L.Imp)):
            return None
        a, b = half.left.left, half.left.right
        if half.right != L.Imp(L.Neg(b), L.Neg(a)):
            return None
        halves.append((a, b))
    (a, b), (c, d) = halves
    return (a, b) if (c, d) == (b, a) else None


# checking


def _check_rule(k: int, phi: Node, j: Justification, lines: list, system: System, pure: list[bool]) -> bool:
    """Check one rule application; returns whether the conclusion is premise-free."""
    L = system.language
    name = _RULE_NAMES[type(j)]
    if name not in system.rules:
        raise BadLine(k, f"rule {name} is not in system {system.name}")
    refs = (j.minor, j.major) if isinstance(j, MP) else (j.line,)
    for r in refs:
        if not 1 <= r < k:
            raise BadLine(k, f"reference to line {r} does not point to an earlier line")
    if isinstance(j, MP):
        minor, major = lines[j.minor - 1], lines[j.major - 1]
        if major != L.Imp(minor, phi):
            raise BadLine(k, f"line {j.major} is not line {j.minor} -> this line")
        return pure[j.minor - 1] and pure[j.major - 1]
    if not pure[j.line - 1]:
        raise BadLine(k, f"rule {name} applied to line {j.line}, which depends on premises")
    src = lines[j.line - 1]
    if isinstance(j, (RForall, RExists)):
        _check_quantifier_rule(k, phi, src, j)
    elif isinstance(j, RABox):
        got = _split_siff(src, L)
        concl = _split_siff(phi, L)
        if got is None:
            raise BadLine(k, f"line {j.line} is not a strong equivalence")
        if (concl is None or not isinstance(concl[0], cn.BoxTo) or not isinstance(concl[1], cn.BoxTo)
                or (concl[0].left, concl[1].left) != got or concl[0].right != concl[1].right):
            raise BadLine(k, "conclusion is not (phi []> chi) <=> (psi []> chi) for the premise phi <=> psi")
    else:
        got = _split_iff(src, L)
        concl = _split_iff(phi, L)
        if got is None:
            raise BadLine(k, f"line {j.line} is not an equivalence")
        if isinstance(j, RCBox2):
            if not all(isinstance(s, cn.Neg) for s in got):
                raise BadLine(k, f"line {j.line} is not ~phi <-> ~psi")
            got = (got[0].body, got[1].body)
            if concl is None or not all(isinstance(s, cn.Neg) for s in concl):
                raise BadLine(k, "conclusion is not ~(chi []> phi) <-> ~(chi []> psi)")
            concl = (concl[0].body, concl[1].body)
        if (concl is None or not isinstance(concl[0], cn.BoxTo) or not isinstance(concl[1], cn.BoxTo)
                or (concl[0].right, concl[1].right) != got or concl[0].left != concl[1].left):
            raise BadLine(k, "conclusion does not have the consequent-replacement shape")
    return True


def _check_quantifier_rule(k: int, phi: Node, src: Node, j: RForall | RExists) -> None:
    x, y = j.x, j.y
    if not isinstance(phi, fo.Imp) or not isinstance(src, fo.Imp):
        raise BadLine(k, "premise and conclusion must be implications")
    if isinstance(j, RForall):
        side, quant, other_src, other = src.left, phi.right, src.right, phi.left
        qcls, where = fo.Forall, "consequent"
    else:
        side, quant, other_src, other = src.right, phi.left, src.left, phi.right
        qcls, where = fo.Exists, "antecedent"
    if side != other:
        raise BadLine(k, "the side formula changed")
    if not isinstance(quant, qcls) or quant.var != x:
        raise BadLine(k, f"the {where} is not quantified over {x}")
    body = quant.body
    if y in free_vars(side):
        raise BadLine(k, f"{y} is free in the side formula")
    if y != x and y in free_vars(quant):
        raise BadLine(k, f"{y} is free in the quantified formula")
    if not substitutable(body, x, y):
        raise BadLine(k, f"{y} is not substitutable for {x}")
    if subst_var(body, x, y) != other_src:
        raise BadLine(k, f"line {j.line} does not carry the instance at {y}")


def check_derivation(d: Derivation) -> None:
    """Raise :class:`BadLine` at the first line that fails to check."""
    try:
        system = SYSTEMS[d.system]
    except KeyError:
        raise BadLine(0, f"unknown system {d.system!r}") from None
    L = system.language
    lines: list[Node] = []
    pure: list[bool] = []
    if not d.lines:
        raise BadLine(0, "empty derivation")
    for k, (phi, j) in enumerate(d.lines, start=1):
        if isinstance(j, AxiomInstance):
            try:
                sid = schema_id(j.schema)
            except KeyError:
                raise BadLine(k, f"unknown schema {j.schema!r}") from None
            if sid not in system.schemas:
                raise BadLine(k, f"schema not in system: {sid} is not an axiom of {system.name}")
        if not isinstance(phi, system.formula_type):
            raise BadLine(k, f"formula is outside the language of {system.name}")
        if not system.strong_negation and has_strong_negation(phi):
            raise BadLine(k, f"strong negation is outside the language of {system.name}")
        if isinstance(j, AxiomInstance):
            if j.bindings:
                reason = check_instance(phi, sid, j.bindings, L)
                if reason is not None:
                    raise BadLine(k, reason)
            elif match_schema(phi, sid) is None:
                raise BadLine(k, f"formula is not an instance of {sid}")
            pure.append(True)
        elif isinstance(j, Premise):
            if not 1 <= j.index <= len(d.premises):
                raise BadLine(k, f"there is no premise {j.index}")
            if d.premises[j.index - 1] != phi:
                raise BadLine(k, f"formula differs from premise {j.index}")
            pure.append(False)
        else:
            pure.append(_check_rule(k, phi, j, lines, system, pure))
        lines.append(phi)


def _is_disjunction_of(phi: Node, delta: set, L: ModuleType) -> bool:
    if phi in delta:
        return True
    return isinstance(phi, L.Or) and _is_disjunction_of(phi.left, delta, L) and _is_disjunction_of(phi.right, delta, L)


def check_consecution(c: Consecution) -> None:
    """The certificate checks and its last line is a disjunction of succedent members.

    Rules other than modus ponens may only be applied to premise-free lines.
    """
    d = c.certificate
    if tuple(d.premises) != tuple(c.gamma):
        raise BadConclusion("certificate premises differ from the antecedent")
    check_derivation(d)
    L = SYSTEMS[d.system].language
    last = d.lines[-1][0]
    if not _is_disjunction_of(last, set(c.delta), L):
        raise BadConclusion("last line is not a disjunction of succedent formulas")
