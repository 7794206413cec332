"""Intuitionistic and Nelsonian Kripke sheaves and their satisfaction relations."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from ..errors import (
    NegationInPositiveLanguage,
    UnboundVariable,
    UnknownSymbol,
    UnknownWorld,
    WrongSignature,
)
from ..syntax.base import EPS, PredSym, Signature, Var, intern_node
from ..syntax.fo import And, Eq, Exists, FoFormula, Forall, Imp, Neg, Or, Pred
from ..syntax.ops import free_vars, fv_key, predicates
from .classical import Assignment, ClassicalModel, Element, homomorphism_failure
from .common import Report, Violation, preorder_violations, up_sets

World = str
Hom = Mapping[Element, Element]
POS = "+"
NEG = "-"


def _polarity(p: str | bool) -> str:
    if p in (POS, True):
        return POS
    if p in (NEG, False):
        return NEG
    raise ValueError(f"polarity must be '+' or '-', got {p!r}")


class _SheafFrame:
    """Worlds, preorder and canonical homomorphisms shared by both sheaf kinds."""

    worlds: tuple[World, ...]
    leq: frozenset[tuple[World, World]]
    homs: Mapping[tuple[World, World], Hom]

    @cached_property
    def up(self) -> dict[World, tuple[World, ...]]:
        return up_sets(self.worlds, self.leq)

    @cached_property
    def _memo(self) -> dict:
        return {}

    def require_world(self, w: World) -> None:
        if w not in self.up:
            raise UnknownWorld(f"{w!r} is not a world of this sheaf")

    def transport(self, w: World, v: World, f: Assignment) -> dict[Var, Element]:
        """f composed with the canonical map from w to v."""
        h = self.homs[(w, v)]
        return {x: h[a] for x, a in f.items()}


def _frame_violations(S: _SheafFrame, components: list[tuple[str, Mapping[World, ClassicalModel]]]) -> list[Violation]:
    out = preorder_violations(S.worlds, S.leq)
    if out:
        return out
    first = components[0][1]
    for w in S.worlds:
        for name, models in components:
            if w not in models:
                out.append(Violation("domain", f"no {name} model at world {w}", w))
        if out:
            continue
        for name, models in components[1:]:
            if models[w].domain_set != first[w].domain_set:
                out.append(Violation("domain", f"{name} domain differs from {components[0][0]} at {w}", w))
    if out:
        return out
    for (w, v) in sorted(S.leq):
        h = S.homs.get((w, v))
        if h is None:
            out.append(Violation("missing hom", f"no hom for ({w},{v})", (w, v)))
            continue
        src, dst = first[w], first[v]
        if set(h) != set(src.domain) or any(b not in dst.domain_set for b in h.values()):
            out.append(Violation("hom not total", f"hom ({w},{v}) is not a total map U_{w} -> U_{v}", (w, v)))
            continue
        if w == v and any(a != b for a, b in h.items()):
            out.append(Violation("identity", f"hom ({w},{w}) is not the identity", (w, w)))
        for name, models in components:
            bad = homomorphism_failure(h, models[w], models[v])
            if bad is not None:
                sym, row = bad
                out.append(Violation(
                    "hom not homomorphism",
                    f"hom not homomorphism at ({w},{v}): {name} {sym.name}{row} is not preserved",
                    (w, v)))
    if out:
        return out
    for (w, v) in sorted(S.leq):
        for u in S.up[v]:
            hw, hv, hu = S.homs[(w, v)], S.homs[(v, u)], S.homs[(w, u)]
            for a in first[w].domain:
                if hv[hw[a]] != hu[a]:
                    out.append(Violation(
                        "functoriality",
                        f"functoriality fails at {w} <= {v} <= {u} on element {a}", (w, v, u)))
                    break
    return out


@dataclass(frozen=True, eq=False)
class IntuitionisticSheaf(_SheafFrame):
    worlds: tuple[World, ...]
    leq: frozenset[tuple[World, World]]
    models: Mapping[World, ClassicalModel]
    homs: Mapping[tuple[World, World], Hom]

    def domain(self, w: World) -> tuple[Element, ...]:
        return self.models[w].domain

    @cached_property
    def signature(self) -> Signature:
        syms: set[PredSym] = set()
        for m in self.models.values():
            syms |= set(m.interp)
        return Signature(frozenset(syms), ())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntuitionisticSheaf):
            return NotImplemented
        return (set(self.worlds) == set(other.worlds) and self.leq == other.leq
                and dict(self.models) == dict(other.models)
                and {k: dict(v) for k, v in self.homs.items()} == {k: dict(v) for k, v in other.homs.items()})

    __hash__ = object.__hash__


@dataclass(frozen=True, eq=False)
class NelsonianSheaf(_SheafFrame):
    """Positive models over the base signature, negative ones with ``eps`` added."""

    worlds: tuple[World, ...]
    leq: frozenset[tuple[World, World]]
    pos: Mapping[World, ClassicalModel]
    neg: Mapping[World, ClassicalModel]
    homs: Mapping[tuple[World, World], Hom]

    def domain(self, w: World) -> tuple[Element, ...]:
        return self.pos[w].domain

    @cached_property
    def signature(self) -> Signature:
        """The base (unsigned) signature, without ``eps``."""
        syms: set[PredSym] = set()
        for m in list(self.pos.values()) + list(self.neg.values()):
            syms |= {s for s in m.interp if s != EPS}
        return Signature.of(syms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NelsonianSheaf):
            return NotImplemented
        return (set(self.worlds) == set(other.worlds) and self.leq == other.leq
                and dict(self.pos) == dict(other.pos) and dict(self.neg) == dict(other.neg)
                and {k: dict(v) for k, v in self.homs.items()} == {k: dict(v) for k, v in other.homs.items()})

    __hash__ = object.__hash__


def identity_homs(worlds: Iterable[World], leq: Iterable[tuple[World, World]],
                  domains: Mapping[World, Iterable[Element]]) -> dict[tuple[World, World], dict]:
    """Identity maps for every ordered pair; only valid when domains grow along the order."""
    return {(w, v): {a: a for a in domains[w]} for (w, v) in leq}


def validate_sheaf(S: IntuitionisticSheaf | NelsonianSheaf) -> Report:
    """Preorder, per-world models, totality, identity, homomorphism and functoriality checks."""
    if isinstance(S, NelsonianSheaf):
        comps = [("positive", S.pos), ("negative", S.neg)]
    else:
        comps = [("model", S.models)]
    return Report(tuple(_frame_violations(S, comps)))


def _restrict(f: Mapping[Var, Element], phi: FoFormula) -> tuple:
    return tuple(f[v] for v in fv_key(phi))


def _check_point(S, w: World, f: Assignment, phi: FoFormula, models: list[Mapping]) -> None:
    S.require_world(w)
    missing = free_vars(phi) - set(f)
    if missing:
        raise UnboundVariable("no value for " + ", ".join(str(v) for v in sorted(missing)))
    dom = models[0][w].domain_set
    for v in free_vars(phi):
        if f[v] not in dom:
            raise UnknownWorld(f"{v} is assigned {f[v]!r}, which is not in the domain at {w}")
    syms = predicates(phi)
    for comp in models:
        for sym in syms:
            if sym not in comp[w].interp:
                raise UnknownSymbol(f"{sym.name} is not interpreted at {w}")


def eval_i(S: IntuitionisticSheaf, w: World, f: Assignment, phi: FoFormula) -> bool:
    """Intuitionistic satisfaction on a sheaf; the language has no strong negation."""
    for node in _nodes(phi):
        if isinstance(node, Neg):
            raise NegationInPositiveLanguage("strong negation in a positive formula")
    _check_point(S, w, f, phi, [S.models])
    return _ev_i(S, S._memo, w, {x: f[x] for x in fv_key(phi)}, intern_node(phi))


def _has_eq(phi: FoFormula) -> bool:
    cached = phi.__dict__.get("_has_eq")
    if cached is None:
        cached = isinstance(phi, Eq) or any(_has_eq(k) for k in phi.children())
        phi.__dict__["_has_eq"] = cached
    return cached


def _nodes(phi):
    stack = [phi]
    while stack:
        n = stack.pop()
        yield n
        stack.extend(n.children())


def _ev_i(S: IntuitionisticSheaf, memo: dict, w: World, f: dict, phi: FoFormula) -> bool:
    key = (phi, w, _restrict(f, phi))
    hit = memo.get(key)
    if hit is not None:
        return hit
    if isinstance(phi, Pred):
        out = tuple(f[a] for a in phi.args) in S.models[w].interp[phi.sym]
    elif isinstance(phi, Eq):
        out = f[phi.left] == f[phi.right]
    elif isinstance(phi, And):
        out = _ev_i(S, memo, w, f, phi.left) and _ev_i(S, memo, w, f, phi.right)
    elif isinstance(phi, Or):
        out = _ev_i(S, memo, w, f, phi.left) or _ev_i(S, memo, w, f, phi.right)
    elif isinstance(phi, Imp):
        out = True
        for v in S.up[w]:
            g = S.transport(w, v, _sub(f, phi))
            if _ev_i(S, memo, v, g, phi.left) and not _ev_i(S, memo, v, g, phi.right):
                out = False
                break
    elif isinstance(phi, Exists):
        out = False
        g = dict(f)
        for a in S.models[w].domain:
            g[phi.var] = a
            if _ev_i(S, memo, w, g, phi.body):
                out = True
                break
    elif isinstance(phi, Forall):
        out = _forall_future(S, w, f, phi, lambda v, g: _ev_i(S, memo, v, g, phi.body))
    else:
        raise NegationInPositiveLanguage("strong negation in a positive formula")
    memo[key] = out
    return out


def _sub(f: dict, phi: FoFormula) -> dict:
    return {x: f[x] for x in fv_key(phi)}


def _forall_future(S, w: World, f: dict, phi, test) -> bool:
    """For every v >= w and every a in U_v, test(v, (f o H_wv)[x/a])."""
    for v in S.up[w]:
        g = S.transport(w, v, _sub(f, phi))
        for a in S.domain(v):
            g[phi.var] = a
            if not test(v, g):
                return False
    return True


def eval_n(S: NelsonianSheaf, w: World, f: Assignment, phi: FoFormula, polarity: str | bool = POS) -> bool:
    """Verification (``+``) or falsification (``-``) on a Nelsonian sheaf."""
    pol = _polarity(polarity)
    _check_point(S, w, f, phi, [S.pos, S.neg])
    if _has_eq(phi):
        for x in S.worlds:
            if EPS not in S.neg[x].interp:
                raise UnknownSymbol(f"eps is not interpreted in the negative model at {x}")
    return _ev_n(S, S._memo, w, _sub(f, phi), intern_node(phi), pol == POS)


def _ev_n(S: NelsonianSheaf, memo: dict, w: World, f: dict, phi: FoFormula, pos: bool) -> bool:
    key = (phi, pos, w, _restrict(f, phi))
    hit = memo.get(key)
    if hit is not None:
        return hit
    if isinstance(phi, Pred):
        model = S.pos[w] if pos else S.neg[w]
        out = tuple(f[a] for a in phi.args) in model.interp[phi.sym]
    elif isinstance(phi, Eq):
        if pos:
            out = f[phi.left] == f[phi.right]
        else:
            out = (f[phi.left], f[phi.right]) in S.neg[w].interp[EPS]
    elif isinstance(phi, Neg):
        out = _ev_n(S, memo, w, f, phi.body, not pos)
    elif isinstance(phi, And):
        if pos:
            out = _ev_n(S, memo, w, f, phi.left, True) and _ev_n(S, memo, w, f, phi.right, True)
        else:
            out = _ev_n(S, memo, w, f, phi.left, False) or _ev_n(S, memo, w, f, phi.right, False)
    elif isinstance(phi, Or):
        if pos:
            out = _ev_n(S, memo, w, f, phi.left, True) or _ev_n(S, memo, w, f, phi.right, True)
        else:
            out = _ev_n(S, memo, w, f, phi.left, False) and _ev_n(S, memo, w, f, phi.right, False)
    elif isinstance(phi, Imp):
        if pos:
            out = True
            for v in S.up[w]:
                g = S.transport(w, v, f)
                if _ev_n(S, memo, v, g, phi.left, True) and not _ev_n(S, memo, v, g, phi.right, True):
                    out = False
                    break
        else:
            out = _ev_n(S, memo, w, f, phi.left, True) and _ev_n(S, memo, w, f, phi.right, False)
    elif isinstance(phi, (Exists, Forall)):
        # exists verifies locally and falsifies over the future; forall is the mirror image
        local = isinstance(phi, Exists) == pos
        if local:
            out = False
            g = dict(f)
            for a in S.domain(w):
                g[phi.var] = a
                if _ev_n(S, memo, w, g, phi.body, pos):
                    out = True
                    break
        else:
            out = _forall_future(S, w, f, phi, lambda v, g: _ev_n(S, memo, v, g, phi.body, pos))
    else:
        raise TypeError(f"not a first-order formula: {phi!r}")
    memo[key] = out
    return out


def eval_biset_i(S: IntuitionisticSheaf, w: World, f: Assignment,
                 gamma: Iterable[FoFormula], delta: Iterable[FoFormula]) -> bool:
    return all(eval_i(S, w, f, g) for g in gamma) and not any(eval_i(S, w, f, d) for d in delta)


def eval_biset_n(S: NelsonianSheaf, w: World, f: Assignment,
                 gamma: Iterable[FoFormula], delta: Iterable[FoFormula]) -> bool:
    """Every gamma member verified and no delta member verified."""
    return all(eval_n(S, w, f, g) for g in gamma) and not any(eval_n(S, w, f, d) for d in delta)


def generated_subsheaf(S: IntuitionisticSheaf | NelsonianSheaf, w: World):
    """Restriction of S to the worlds above w."""
    S.require_world(w)
    keep = S.up[w]
    kset = set(keep)
    leq = frozenset(p for p in S.leq if p[0] in kset and p[1] in kset)
    homs = {p: h for p, h in S.homs.items() if p in leq}
    if isinstance(S, NelsonianSheaf):
        return NelsonianSheaf(keep, leq, {v: S.pos[v] for v in keep}, {v: S.neg[v] for v in keep}, homs)
    return IntuitionisticSheaf(keep, leq, {v: S.models[v] for v in keep}, homs)


def nelsonian_to_int(S: NelsonianSheaf) -> IntuitionisticSheaf:
    """The signed sheaf: ``P+`` reads the positive extension, ``P-`` and ``eps`` the negative one."""
    base = sorted(S.signature.symbols)
    models = {}
    for w in S.worlds:
        interp: dict[PredSym, frozenset] = {}
        for sym in base:
            interp[sym.plus()] = S.pos[w].interp.get(sym, frozenset())
            interp[sym.minus()] = S.neg[w].interp.get(sym, frozenset())
        interp[EPS] = S.neg[w].interp.get(EPS, frozenset())
        models[w] = ClassicalModel(S.pos[w].domain, interp)
    return IntuitionisticSheaf(S.worlds, S.leq, models, S.homs)


def int_to_nelsonian(S: IntuitionisticSheaf) -> NelsonianSheaf:
    """Inverse of :func:`nelsonian_to_int` on signed signatures."""
    for sym in S.signature.symbols:
        if not (sym.is_signed or sym == EPS):
            raise WrongSignature(f"{sym.name} is neither signed nor eps")
    pos, neg = {}, {}
    for w in S.worlds:
        m = S.models[w]
        p_int: dict[PredSym, frozenset] = {}
        n_int: dict[PredSym, frozenset] = {EPS: m.interp.get(EPS, frozenset())}
        for sym, rows in m.interp.items():
            if sym == EPS:
                continue
            (p_int if sym.kind == "positive" else n_int)[sym.base()] = rows
        for sym in list(p_int) + list(n_int):
            if sym != EPS:
                p_int.setdefault(sym, frozenset())
                n_int.setdefault(sym, frozenset())
        pos[w] = ClassicalModel(m.domain, p_int)
        neg[w] = ClassicalModel(m.domain, n_int)
    return NelsonianSheaf(S.worlds, S.leq, pos, neg, S.homs)


def check_th(S: NelsonianSheaf, theory: Iterable[FoFormula]) -> Report:
    """Verify every sentence at every world; the first failure names sentence and world."""
    labels = getattr(theory, "labels", None)
    sentences = list(theory)
    if labels is None:
        labels = tuple(f"#{i}" for i in range(len(sentences)))
    for label, phi in zip(labels, sentences):
        if free_vars(phi):
            raise ValueError(f"{label} is not a sentence")
        for w in S.worlds:
            if not eval_n(S, w, {}, phi, POS):
                return Report((Violation("theory", f"{label} fails at world {w}", (w, label, phi)),))
    return Report()
