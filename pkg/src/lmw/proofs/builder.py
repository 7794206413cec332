"""Assemble primitive derivations line by line.

Each helper appends only primitive lines (axiom instances, premises, rules),
so the result is checkable without any derived-rule support.
"""

from __future__ import annotations

from ..syntax import cn, fo
from ..syntax.base import Node, Var
from ..syntax.derived import equiv as _iff
from ..syntax.derived import strong_equiv as _siff
from ..syntax.ops import subst_var
from .checker import (
    MP, SYSTEMS, AxiomInstance, Derivation, Justification, Premise, RABox, RCBox1, RCBox2,
    RExists, RForall,
)
from .schemas import SCHEMAS, instantiate, schema_id


class ProofBuilder:
    """Line numbers returned by every method are 1-based."""

    def __init__(self, system: str, premises: tuple[Node, ...] = ()):
        self.system = system
        self.L = SYSTEMS[system].language
        self.premises = tuple(premises)
        self.lines: list[tuple[Node, Justification]] = []

    def formula(self, k: int) -> Node:
        return self.lines[k - 1][0]

    def _add(self, phi: Node, j: Justification) -> int:
        self.lines.append((phi, j))
        return len(self.lines)

    def build(self) -> Derivation:
        return Derivation(self.system, self.premises, tuple(self.lines))

    # primitive steps

    def ax(self, schema: str, **bindings: Node | Var) -> int:
        sid = schema_id(schema)
        return self._add(instantiate(SCHEMAS[sid], bindings, self.L), AxiomInstance(sid, bindings))

    def premise(self, n: int) -> int:
        return self._add(self.premises[n - 1], Premise(n))

    def mp(self, minor: int, major: int) -> int:
        imp = self.formula(major)
        if not isinstance(imp, self.L.Imp) or imp.left != self.formula(minor):
            raise ValueError(f"line {major} is not line {minor} -> something")
        return self._add(imp.right, MP(minor, major))

    def rall(self, k: int, x: Var, y: Var) -> int:
        src = self.formula(k)
        body = _abstract(src.right, y, x)
        return self._add(fo.Imp(src.left, fo.Forall(x, body)), RForall(k, x, y))

    def rex(self, k: int, x: Var, y: Var) -> int:
        src = self.formula(k)
        body = _abstract(src.left, y, x)
        return self._add(fo.Imp(fo.Exists(x, body), src.right), RExists(k, x, y))

    def rabox(self, k: int, chi: Node) -> int:
        a, b = _siff_parts(self.formula(k))
        return self._add(_siff(cn.BoxTo(a, chi), cn.BoxTo(b, chi)), RABox(k))

    def rcbox1(self, k: int, chi: Node) -> int:
        a, b = _iff_parts(self.formula(k))
        return self._add(_iff(cn.BoxTo(chi, a), cn.BoxTo(chi, b)), RCBox1(k))

    def rcbox2(self, k: int, chi: Node) -> int:
        a, b = _iff_parts(self.formula(k))
        return self._add(_iff(cn.Neg(cn.BoxTo(chi, a.body)), cn.Neg(cn.BoxTo(chi, b.body))), RCBox2(k))

    # derived steps, expanded into primitive lines

    def imp_self(self, phi: Node) -> int:
        """phi -> phi in five lines."""
        Imp = self.L.Imp
        pp = Imp(phi, phi)
        l1 = self.ax("a1", phi=phi, psi=pp)
        l2 = self.ax("a2", phi=phi, psi=pp, chi=phi)
        l3 = self.mp(l1, l2)
        l4 = self.ax("a1", phi=phi, psi=phi)
        return self.mp(l4, l3)

    def hyp_syll(self, i: int, j: int) -> int:
        """From A -> B and B -> C infer A -> C."""
        a, b = self.formula(i).left, self.formula(i).right
        c = self.formula(j).right
        l1 = self.ax("a1", phi=self.formula(j), psi=a)
        l2 = self.mp(j, l1)
        l3 = self.ax("a2", phi=a, psi=b, chi=c)
        l4 = self.mp(l2, l3)
        return self.mp(i, l4)

    def conj_intro(self, i: int, j: int) -> int:
        l1 = self.ax("a5", phi=self.formula(i), psi=self.formula(j))
        l2 = self.mp(i, l1)
        return self.mp(j, l2)

    def and_left(self, k: int) -> int:
        f = self.formula(k)
        return self.mp(k, self.ax("a3", phi=f.left, psi=f.right))

    def and_right(self, k: int) -> int:
        f = self.formula(k)
        return self.mp(k, self.ax("a4", phi=f.left, psi=f.right))

    def imp_conj(self, i: int, j: int) -> int:
        """From A -> B and A -> C infer A -> (B & C)."""
        a, b = self.formula(i).left, self.formula(i).right
        c = self.formula(j).right
        l1 = self.ax("a5", phi=b, psi=c)
        l2 = self.hyp_syll(i, l1)
        l3 = self.ax("a2", phi=a, psi=c, chi=self.L.And(b, c))
        l4 = self.mp(l2, l3)
        return self.mp(j, l4)


def _abstract(phi: Node, y: Var, x: Var) -> Node:
    """Replace free y by x; the caller guarantees x is substitutable."""
    return phi if x == y else subst_var(phi, y, x)


def _iff_parts(phi: Node) -> tuple[Node, Node]:
    return phi.left.left, phi.left.right


def _siff_parts(phi: Node) -> tuple[Node, Node]:
    return phi.left.left.left, phi.left.left.right
