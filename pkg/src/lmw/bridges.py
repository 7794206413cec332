"""Constructions moving models between the conditional and first-order semantics."""

from __future__ import annotations

from itertools import product
from typing import Iterable, Mapping, NamedTuple

from .errors import SizeCap, TheoryNotSatisfied, UnknownWorld
from .semantics.classical import ClassicalModel, Element, eval_c
from .semantics.conditional import CkModel, ExplicitAccessor, NcModel, VirtualAccessor
from .semantics.sheaf import NelsonianSheaf, check_th, eval_n
from .syntax import cn
from .syntax.base import E, EPS, O, R, S, PredSym, Signature, Var
from .syntax.derived import strong_equiv
from .syntax.ops import all_vars
from .theories import th_ck, th_n4
from .translate import set_encoding, st_n4ck

CK_CAP = 5
SHEAFIFY_CAP = 3
SHEAF_WORLD = "•"


class PairedWorld(NamedTuple):
    """A world of the conditional model read off a sheaf: a sheaf world with one of its elements."""

    world: str
    element: Element

    def __str__(self) -> str:
        return f"({self.world},{self.element})"


def _subsets(items: tuple) -> list[frozenset]:
    """Every subset, in binary-counter order over ``items``."""
    return [frozenset(x for i, x in enumerate(items) if mask >> i & 1) for mask in range(2 ** len(items))]


def subset_name(X: Iterable, order: tuple) -> str:
    X = set(X)
    return "{" + ",".join(w for w in order if w in X) + "}"


def biset_name(X: Iterable, Y: Iterable, order: tuple) -> str:
    X, Y = set(X), set(Y)
    return "[" + ",".join(w for w in order if w in X) + "|" + ",".join(w for w in order if w in Y) + "]"


def _props(symbols: Iterable[PredSym]) -> list[PredSym]:
    return sorted((s for s in symbols if s.kind == "prop"), key=lambda s: int(s.name[1:]))


# classical conditional models <-> classical first-order models


def ck_to_classical(M: CkModel, cap: int = CK_CAP) -> ClassicalModel:
    """Worlds plus every subset of worlds, with S, O, E and R read set-theoretically."""
    W = M.worlds
    if len(W) > cap:
        raise SizeCap(f"{len(W)} worlds exceed the cap of {cap}")
    subsets = _subsets(W)
    names = {X: subset_name(X, W) for X in subsets}
    clash = set(names.values()) & set(W)
    if clash:
        raise ValueError(f"world names collide with subset names: {sorted(clash)}")
    interp: dict[PredSym, set] = {O: {(w,) for w in W}, S: {(names[X],) for X in subsets}}
    interp[E] = {(w, names[X]) for X in subsets for w in X}
    interp[R] = set()
    for X in subsets:
        for w in W:
            for v in M.accessor.successors(w, X):
                interp[R].add((w, names[X], v))
    for p, ws in M.valuation.items():
        interp[p] = {(w,) for w in ws}
    domain = W + tuple(names[X] for X in subsets)
    return ClassicalModel.build(domain, interp)


def _require_theory(M: ClassicalModel, theory) -> None:
    for label, phi in theory.items():
        if not eval_c(M, {}, phi):
            raise TheoryNotSatisfied(f"{label} fails", sentence=label)


def classical_to_ck(M: ClassicalModel, check: bool = True) -> CkModel:
    """Every element becomes a world; R is indexed through the sets that E encodes."""
    for sym in (S, O, E, R):
        M.ext(sym)
    if check:
        _require_theory(M, th_ck(Signature.of(M.interp)))
    objects = frozenset(a for (a,) in M.ext(O))
    members: dict[Element, set] = {a: set() for (a,) in M.ext(S)}
    for b, a in M.ext(E):
        if a in members and b in objects:
            members[a].add(b)
    codes = {a: frozenset(bs) for a, bs in members.items()}
    rsucc: dict[tuple[Element, Element], list] = {}
    for w, a, v in M.ext(R):
        rsucc.setdefault((w, a), []).append(v)

    def oracle(w: Element, X: frozenset) -> list:
        target = X & objects
        out: list = []
        for a, code in codes.items():
            if code == target:
                out.extend(v for v in rsucc.get((w, a), ()) if v not in out)
        return out

    valuation = {p: frozenset(a for (a,) in M.interp[p]) for p in _props(M.interp)}
    return CkModel(M.domain, valuation, VirtualAccessor(oracle))


# Nelsonian sheaves -> Nelsonian conditional models


def xi_holds(S_: NelsonianSheaf, w: str, c: Element, X: Iterable, Y: Iterable) -> bool:
    """Does ``c`` at ``w`` encode the bi-set (X, Y) of paired worlds, at every world above ``w``?"""
    S_.require_world(w)
    if c not in S_.pos[w].domain_set:
        raise UnknownWorld(f"{c!r} is not an element at {w}")
    X, Y = set(X), set(Y)
    for u in S_.up[w]:
        cu = S_.homs[(w, u)][c]
        epos, eneg = S_.pos[u].interp.get(E, frozenset()), S_.neg[u].interp.get(E, frozenset())
        for (d,) in S_.pos[u].interp.get(O, frozenset()):
            if ((u, d) in X) != ((d, cu) in epos) or ((u, d) in Y) != ((d, cu) in eneg):
                return False
    return True


def sheaf_to_nc(S_: NelsonianSheaf, check: bool = True) -> NcModel:
    """The conditional model whose worlds pair sheaf worlds with their elements.

    Accessibility is virtual: a bi-set is resolved through the set elements that
    encode it, so only the bi-sets an evaluation asks about are ever computed.
    """
    sig = S_.signature
    if check:
        report = check_th(S_, th_n4(sig))
        if not report.ok:
            w, label, _ = report.first.witness
            raise TheoryNotSatisfied(report.first.detail, sentence=label, world=w)
    worlds = tuple(PairedWorld(w, a) for w in S_.worlds for a in S_.domain(w))
    leq = frozenset(
        (PairedWorld(w, a), PairedWorld(v, S_.homs[(w, v)][a]))
        for (w, v) in S_.leq for a in S_.domain(w))
    props = _props(sig.symbols)
    valplus = {p: frozenset(PairedWorld(w, a) for w in S_.worlds for (a,) in S_.pos[w].interp.get(p, ()))
               for p in props}
    valminus = {p: frozenset(PairedWorld(w, a) for w in S_.worlds for (a,) in S_.neg[w].interp.get(p, ()))
                for p in props}
    sets = {w: [a for (a,) in S_.pos[w].interp.get(S, ())] for w in S_.worlds}
    rsucc: dict[tuple, list] = {}
    for w in S_.worlds:
        for a, c, b in S_.pos[w].interp.get(R, ()):
            rsucc.setdefault((w, a, c), []).append(b)

    def oracle(pw: PairedWorld, key: tuple[frozenset, frozenset]) -> list:
        w, a = pw
        X, Y = key
        out: list = []
        for c in sets[w]:
            if (w, a, c) in rsucc and xi_holds(S_, w, c, X, Y):
                out.extend(PairedWorld(w, b) for b in rsucc[(w, a, c)] if PairedWorld(w, b) not in out)
        return out

    return NcModel(worlds, leq, valplus, valminus, VirtualAccessor(oracle))


# finite Nelsonian theory models built from conditional models


def nc_sheafify(N: NcModel, props: Iterable[PredSym] | None = None, cap: int = SHEAFIFY_CAP) -> NelsonianSheaf:
    """A one-world Nelsonian sheaf over the worlds of N plus every bi-set of them."""
    W = N.worlds
    if len(W) > cap:
        raise SizeCap(f"{len(W)} worlds exceed the cap of {cap}")
    if not isinstance(N.accessor, ExplicitAccessor):
        raise TypeError("nc_sheafify needs an explicit accessor")
    props = _props(set(props or ()) | set(N.valplus) | set(N.valminus))
    subsets = _subsets(W)
    bisets = [(X, Y) for X, Y in product(subsets, subsets)]
    names = {b: biset_name(b[0], b[1], W) for b in bisets}
    clash = set(names.values()) & set(W)
    if clash:
        raise ValueError(f"world names collide with bi-set names: {sorted(clash)}")
    domain = W + tuple(names[b] for b in bisets)
    pos: dict[PredSym, set] = {O: {(w,) for w in W}, S: {(names[b],) for b in bisets}, E: set(), R: set()}
    neg: dict[PredSym, set] = {O: set(), S: set(), E: set(), R: set(), EPS: set()}
    for b in bisets:
        X, Y = b
        pos[E] |= {(v, names[b]) for v in X}
        neg[E] |= {(v, names[b]) for v in Y}
        for u in W:
            pos[R] |= {(u, names[b], v) for v in N.accessor.successors(u, b)}
    for p in props:
        pos[p] = {(w,) for w in N.valplus.get(p, ())}
        neg[p] = {(w,) for w in N.valminus.get(p, ())}
    ident = {a: a for a in domain}
    return NelsonianSheaf(
        (SHEAF_WORLD,), frozenset({(SHEAF_WORLD, SHEAF_WORLD)}),
        {SHEAF_WORLD: ClassicalModel.build(domain, pos)},
        {SHEAF_WORLD: ClassicalModel.build(domain, neg)},
        {(SHEAF_WORLD, SHEAF_WORLD): ident})


class Comprehension(NamedTuple):
    """Per-world witnesses for the set encoding of a formula; ``missing`` lists worlds without one."""

    witnesses: Mapping[str, Element]
    missing: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.missing


def comprehension_formula(phi: cn.CnFormula, x: Var = Var(0)):
    """S(y) & (forall x)_O (E(x,y) <=> ST_x(phi)), with y the least variable not used by ST_x(phi)."""
    body = st_n4ck(x, phi)
    y = Var(max(v.index for v in all_vars(body) | {x}) + 1)
    return y, set_encoding(y, x, body, strong_equiv)


def check_comprehension(S_: NelsonianSheaf, phi: cn.CnFormula, x: Var = Var(0)) -> Comprehension:
    """Scan the set elements at each world for one encoding the truth bi-set of phi."""
    y, enc = comprehension_formula(phi, x)
    found: dict[str, Element] = {}
    missing: list[str] = []
    for w in S_.worlds:
        for (c,) in sorted(S_.pos[w].interp.get(S, ())):
            if eval_n(S_, w, {y: c}, enc, "+"):
                found[w] = c
                break
        else:
            missing.append(w)
    return Comprehension(found, tuple(missing))


def witness_name(N: NcModel, pos: Iterable, neg: Iterable) -> str:
    """Element name that :func:`nc_sheafify` gives the bi-set (pos, neg)."""
    return biset_name(pos, neg, N.worlds)


# explicit copies of virtual models

MATERIALIZE_CAP = 6


def materialize(M: CkModel | NcModel, cap: int = MATERIALIZE_CAP) -> CkModel | NcModel:
    """Query every key of a virtual accessor and store the answers; worlds are renamed by ``str``.

    Keys number 2^n (classical) or 4^n (Nelsonian) for n worlds, hence the cap.
    """
    W = M.worlds
    if len(W) > cap:
        raise SizeCap(f"{len(W)} worlds exceed the cap of {cap}")
    name = {w: str(w) for w in W}
    if len(set(name.values())) != len(W):
        raise ValueError("world names collide after renaming")
    subsets = _subsets(W)

    def rn(ws: Iterable) -> frozenset:
        return frozenset(name[w] for w in ws)

    if isinstance(M, CkModel):
        rel = [(name[w], rn(X), name[v]) for X in subsets for w in W for v in M.accessor.successors(w, X)]
        return CkModel(tuple(name[w] for w in W), {p: rn(ws) for p, ws in M.valuation.items()},
                       ExplicitAccessor(rel))
    rel = [(name[w], (rn(X), rn(Y)), name[v]) for X, Y in product(subsets, subsets) for w in W
           for v in M.accessor.successors(w, (X, Y))]
    return NcModel(tuple(name[w] for w in W), frozenset((name[a], name[b]) for a, b in M.leq),
                   {p: rn(ws) for p, ws in M.valplus.items()}, {p: rn(ws) for p, ws in M.valminus.items()},
                   ExplicitAccessor(rel))


__all__ = [
    "CK_CAP", "Comprehension", "MATERIALIZE_CAP", "PairedWorld", "SHEAFIFY_CAP", "SHEAF_WORLD", "biset_name",
    "check_comprehension", "ck_to_classical", "classical_to_ck", "comprehension_formula",
    "materialize", "nc_sheafify", "sheaf_to_nc", "subset_name", "witness_name", "xi_holds",
]
