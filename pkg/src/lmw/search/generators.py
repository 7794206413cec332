"""Seeded random generation of bounded models and formulas.

Every generator draws from a ``random.Random`` seeded from the bounds, so a
(kind, bounds) pair fixes the whole stream.  Models are valid by construction:
preorders are closures of random DAGs, homomorphisms are forward-chained along
them, and extensions are pushed forward before fresh rows are added.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, fields, replace
from itertools import product
from typing import Iterator

from ..semantics.classical import ClassicalModel
from ..semantics.common import up_sets
from ..semantics.conditional import CkModel, ExplicitAccessor, KripkeModalModel, NcModel, biset_key
from ..semantics.sheaf import IntuitionisticSheaf, NelsonianSheaf
from ..syntax import cn, fo, md
from ..syntax.base import E, EPS, PredSym, Var, prop
from ..syntax.ops import depth

MODEL_KINDS = ("classical", "kripke-modal", "int-sheaf", "n4-sheaf", "ck", "nc")
LANGUAGES = ("fo", "fo+", "cn", "md")


@dataclass(frozen=True)
class Bounds:
    worlds: int = 3
    elements: int = 3
    depth: int = 3
    props: int = 2
    instances: int = 300
    seed: int = 0
    variables: int = 2  # free variable pool v0.. for first-order formulas

    def __post_init__(self) -> None:
        for f in fields(self):
            value = getattr(self, f.name)
            if f.name == "seed":
                continue
            if f.name == "depth" and value == 0:
                continue
            if value < 1:
                raise ValueError(f"bound {f.name} must be positive, got {value}")

    @classmethod
    def parse(cls, text: str, base: Bounds | None = None) -> Bounds:
        """Read ``worlds=2,depth=2``; unspecified fields keep their defaults."""
        out = base or cls()
        if not text.strip():
            return out
        known = {f.name for f in fields(cls)}
        changes = {}
        for item in text.split(","):
            key, eq, value = item.partition("=")
            key = key.strip()
            if not eq or key not in known:
                raise ValueError(f"bad bound {item.strip()!r}; known bounds: {', '.join(sorted(known))}")
            changes[key] = int(value)
        return replace(out, **changes)

    def rng(self, salt: str = "") -> random.Random:
        return random.Random(f"{self.seed}:{salt}")


def _props(n: int) -> list[PredSym]:
    return [prop(i) for i in range(n)]


# formulas


def random_formula(rng: random.Random, language: str, budget: int, nprops: int,
                   nvars: int = 2, symbols: tuple[PredSym, ...] = ()) -> object:
    """One formula with connectives weighted uniformly under a depth budget.

    ``fo+`` is the first-order language without strong negation.  First-order
    atoms draw from the props, any extra ``symbols`` and equality.
    """
    props = _props(nprops)
    if language in ("fo", "fo+"):
        atoms = props + list(symbols)
        ops = ["and", "or", "imp", "forall", "exists"] + (["neg"] if language == "fo" else [])
    elif language == "cn":
        ops = ["and", "or", "imp", "neg", "boxto"]
    elif language == "md":
        ops = ["and", "or", "imp", "neg", "box", "diamond"]
    else:
        raise ValueError(f"unknown language {language!r}")
    L = {"fo": fo, "fo+": fo, "cn": cn, "md": md}[language]
    variables = [Var(i) for i in range(nvars)]

    def atom():
        if L is not fo:
            return L.Prop(rng.choice(props))
        k = rng.randrange(len(atoms) + 1)
        if k == len(atoms):
            return fo.Eq(rng.choice(variables), rng.choice(variables))
        sym = atoms[k]
        return fo.Pred(sym, tuple(rng.choice(variables) for _ in range(sym.arity)))

    def go(d: int):
        if d == 0 or rng.randrange(len(ops) + 1) == 0:
            return atom()
        op = rng.choice(ops)
        if op in ("and", "or", "imp"):
            cls = {"and": L.And, "or": L.Or, "imp": L.Imp}[op]
            return cls(go(d - 1), go(d - 1))
        if op == "neg":
            return L.Neg(go(d - 1))
        if op == "boxto":
            return cn.BoxTo(go(d - 1), go(d - 1))
        if op == "box":
            return md.Box(go(d - 1))
        if op == "diamond":
            return md.Diamond(go(d - 1))
        cls = fo.Forall if op == "forall" else fo.Exists
        return cls(rng.choice(variables), go(d - 1))

    return go(budget)


def gen_formulas(language: str, bounds: Bounds, symbols: tuple[PredSym, ...] = ()) -> Iterator:
    rng = bounds.rng(f"formulas:{language}")
    for _ in range(bounds.instances):
        yield random_formula(rng, language, rng.randint(0, bounds.depth), bounds.props, bounds.variables, symbols)


def all_cn_formulas(max_depth: int, nprops: int) -> list[cn.CnFormula]:
    """Every conditional formula up to the given depth, shallow ones first."""
    exact = [[cn.Prop(p) for p in _props(nprops)]]
    for d in range(1, max_depth + 1):
        lower = [phi for layer in exact for phi in layer]
        new = [cn.Neg(a) for a in exact[d - 1]]
        for a, b in product(lower, lower):
            if depth(a) == d - 1 or depth(b) == d - 1:
                new += [cn.And(a, b), cn.Or(a, b), cn.Imp(a, b), cn.BoxTo(a, b)]
        exact.append(new)
    return [phi for layer in exact for phi in layer]


# frames


def random_dag_order(rng: random.Random, n: int) -> tuple[tuple[str, ...], frozenset, dict]:
    """Worlds w0..w{n-1}, the reflexive-transitive closure of a random DAG, and immediate predecessors."""
    worlds = tuple(f"w{i}" for i in range(n))
    parents = {w: [] for w in worlds}
    for j in range(1, n):
        for i in range(j):
            if rng.random() < 0.5:
                parents[worlds[j]].append(worlds[i])
    below = {w: {w} for w in worlds}
    for j in range(n):
        for p in parents[worlds[j]]:
            below[worlds[j]] |= below[p]
    leq = frozenset((a, b) for b in worlds for a in below[b])
    return worlds, leq, parents


def _forward_homs(rng: random.Random, worlds, leq, parents, max_elements: int):
    """Domains and a functorial family of maps, built world by world in order.

    The map from each DAG parent is random except where a shared ancestor forces
    it; a draw that still breaks functoriality is redrawn.
    """
    domains: dict[str, tuple] = {}
    homs: dict[tuple, dict] = {}
    for v in worlds:
        ancestors = [u for u in worlds if (u, v) in leq and u != v]
        for _ in range(50):
            dom = tuple(f"a{i}" for i in range(rng.randint(1, max_elements)))
            maps: dict[str, dict] = {}
            for p in parents[v]:
                forced: dict = {}
                for q, mq in maps.items():
                    for u in ancestors:
                        if (u, p) in leq and (u, q) in leq:
                            for a in domains[u]:
                                forced.setdefault(homs[(u, p)][a], mq[homs[(u, q)][a]])
                maps[p] = {a: forced[a] if a in forced else rng.choice(dom) for a in domains[p]}
            full = {}
            for u in ancestors:
                candidates = [{a: m[homs[(u, p)][a]] for a in domains[u]} for p, m in maps.items() if (u, p) in leq]
                if any(c != candidates[0] for c in candidates):
                    break
                full[u] = candidates[0]
            else:
                break
        else:
            raise RuntimeError(f"no functorial maps into {v} after 50 draws")
        domains[v] = dom
        homs[(v, v)] = {a: a for a in dom}
        for u, m in full.items():
            homs[(u, v)] = m
    return domains, homs


def _random_rows(rng: random.Random, sym: PredSym, dom: tuple, density: float = 0.4) -> set:
    return {row for row in product(dom, repeat=sym.arity) if rng.random() < density}


def _forward_models(rng: random.Random, worlds, leq, domains, homs, symbols) -> dict[str, ClassicalModel]:
    models: dict[str, ClassicalModel] = {}
    for v in worlds:
        interp = {}
        for sym in symbols:
            rows = _random_rows(rng, sym, domains[v])
            for u in worlds:
                if (u, v) in leq and u != v:
                    h = homs[(u, v)]
                    rows |= {tuple(h[a] for a in row) for row in models[u].interp[sym]}
            interp[sym] = rows
        models[v] = ClassicalModel.build(domains[v], interp)
    return models


def random_int_sheaf(rng: random.Random, bounds: Bounds, symbols: tuple[PredSym, ...]) -> IntuitionisticSheaf:
    worlds, leq, parents = random_dag_order(rng, rng.randint(1, bounds.worlds))
    domains, homs = _forward_homs(rng, worlds, leq, parents, bounds.elements)
    models = _forward_models(rng, worlds, leq, domains, homs, symbols)
    return IntuitionisticSheaf(worlds, leq, models, homs)


def random_n4_sheaf(rng: random.Random, bounds: Bounds, symbols: tuple[PredSym, ...]) -> NelsonianSheaf:
    worlds, leq, parents = random_dag_order(rng, rng.randint(1, bounds.worlds))
    domains, homs = _forward_homs(rng, worlds, leq, parents, bounds.elements)
    pos = _forward_models(rng, worlds, leq, domains, homs, symbols)
    neg = _forward_models(rng, worlds, leq, domains, homs, tuple(symbols) + (EPS,))
    return NelsonianSheaf(worlds, leq, pos, neg, homs)


def random_classical(rng: random.Random, bounds: Bounds, symbols: tuple[PredSym, ...]) -> ClassicalModel:
    dom = tuple(f"a{i}" for i in range(rng.randint(1, bounds.elements)))
    return ClassicalModel.build(dom, {s: _random_rows(rng, s, dom) for s in symbols})


def random_kripke(rng: random.Random, bounds: Bounds) -> KripkeModalModel:
    worlds = tuple(f"w{i}" for i in range(rng.randint(1, bounds.worlds)))
    interp = {p: {(w,) for w in worlds if rng.random() < 0.5} for p in _props(bounds.props)}
    interp[E] = {(a, b) for a in worlds for b in worlds if rng.random() < 0.4}
    return KripkeModalModel(ClassicalModel.build(worlds, interp))


def _subsets(items: tuple) -> list[frozenset]:
    return [frozenset(x for i, x in enumerate(items) if mask >> i & 1) for mask in range(2 ** len(items))]


def random_ck(rng: random.Random, bounds: Bounds) -> CkModel:
    worlds = tuple(f"w{i}" for i in range(rng.randint(1, bounds.worlds)))
    val = {p: {w for w in worlds if rng.random() < 0.5} for p in _props(bounds.props)}
    rel = [(w, X, v) for X in _subsets(worlds) for w in worlds for v in worlds if rng.random() < 0.35]
    return CkModel.build(worlds, val, rel)


def _random_upset(rng: random.Random, worlds, up) -> frozenset:
    out: set = set()
    for w in worlds:
        if rng.random() < 0.35:
            out |= set(up[w])
    return frozenset(out)


def frame_closure(worlds, leq, triples: set) -> set:
    """Least superset of the triples satisfying both frame conditions, key by key."""
    up = up_sets(worlds, leq)
    out = set(triples)
    changed = True
    while changed:
        changed = False
        for (w, k, u) in list(out):
            for w2 in up[w]:
                if not any((w2, k, u2) in out for u2 in up[u]):
                    out.add((w2, k, u))
                    changed = True
            for u2 in up[u]:
                if not any((w2, k, u2) in out for w2 in up[w]):
                    out.add((w, k, u2))
                    changed = True
    return out


def random_nc(rng: random.Random, bounds: Bounds) -> NcModel:
    worlds, leq, _ = random_dag_order(rng, rng.randint(1, bounds.worlds))
    up = up_sets(worlds, leq)
    props = _props(bounds.props)
    valplus = {p: _random_upset(rng, worlds, up) for p in props}
    valminus = {p: _random_upset(rng, worlds, up) for p in props}
    upsets = sorted(_upsets(worlds, up), key=sorted)
    keys = [biset_key(X, Y) for X in upsets for Y in upsets]
    triples = {(w, k, v) for k in keys for w in worlds for v in worlds if rng.random() < 0.2}
    acc = ExplicitAccessor(frame_closure(worlds, leq, triples))
    return NcModel(worlds, leq, valplus, valminus, acc)


def _upsets(worlds, up) -> list[frozenset]:
    out = set()
    for S_ in _subsets(worlds):
        out.add(frozenset().union(*(up[w] for w in S_)) if S_ else frozenset())
    return list(out)


def gen_models(kind: str, bounds: Bounds, symbols: tuple[PredSym, ...] | None = None) -> Iterator:
    """A seeded stream of ``bounds.instances`` models of the given kind."""
    if kind not in MODEL_KINDS:
        raise ValueError(f"unknown model kind {kind!r}; expected one of {', '.join(MODEL_KINDS)}")
    rng = bounds.rng(f"models:{kind}")
    syms = tuple(symbols) if symbols is not None else tuple(_props(bounds.props)) + (E,)
    for _ in range(bounds.instances):
        yield random_model(rng, kind, bounds, syms)


def random_model(rng: random.Random, kind: str, bounds: Bounds, symbols: tuple[PredSym, ...]):
    if kind == "classical":
        return random_classical(rng, bounds, symbols)
    if kind == "kripke-modal":
        return random_kripke(rng, bounds)
    if kind == "int-sheaf":
        return random_int_sheaf(rng, bounds, symbols)
    if kind == "n4-sheaf":
        return random_n4_sheaf(rng, bounds, symbols)
    if kind == "ck":
        return random_ck(rng, bounds)
    return random_nc(rng, bounds)
