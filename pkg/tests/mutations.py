"""Seeded single-line mutations of a derivation, for kill-rate checks."""

from __future__ import annotations

import random
import sys
from dataclasses import replace

from lmw.proofs import MP, Derivation
from lmw.syntax.base import Node, PredSym
from lmw.syntax.ops import iter_subformulas


def _rename_atom(phi: Node, rng: random.Random) -> Node:
    atoms = [n for n in iter_subformulas(phi) if getattr(n, "sym", None) is not None and n.sym.kind == "prop"]
    target = rng.choice(atoms)
    fresh = PredSym(f"p{int(target.sym.name[1:]) + 7}", target.sym.arity)

    def go(node):
        if node is target:
            return replace(node, sym=fresh)
        kids = node.children()
        if not kids:
            return node
        return type(node)(*[go(v) if isinstance(v, Node) else v for v in node._key()])

    return go(phi)


def _weaken(phi: Node, rng: random.Random) -> Node:
    mod = sys.modules[type(phi).__module__]
    return (mod.And if rng.random() < 0.5 else mod.Or)(phi, phi)


def mutate(d: Derivation, rng: random.Random) -> tuple[Derivation, int]:
    """A copy of ``d`` with one line changed, and that line's 1-based number."""
    k = rng.randrange(len(d.lines))
    phi, j = d.lines[k]
    kinds = ["weaken"]
    if any(getattr(n, "sym", None) is not None and n.sym.kind == "prop" for n in iter_subformulas(phi)):
        kinds.append("rename")
    if isinstance(j, MP) and j.minor != j.major:
        kinds.append("swap")
    kind = rng.choice(kinds)
    if kind == "weaken":
        new = (_weaken(phi, rng), j)
    elif kind == "rename":
        new = (_rename_atom(phi, rng), j)
    else:
        new = (phi, MP(j.major, j.minor))
    lines = d.lines[:k] + (new,) + d.lines[k + 1:]
    return replace(d, lines=lines), k + 1
