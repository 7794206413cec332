"""Chellas-style conditional models (classical and Nelsonian) and Kripke modal models."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Iterable, Mapping, NamedTuple, Protocol

from ..errors import UnknownSymbol, UnknownWorld, ValidationError
from ..syntax import cn, md
from ..syntax.base import E, PredSym, Signature
from .classical import ClassicalModel
from .common import Report, Violation, is_upward_closed, preorder_violations, up_sets

World = Hashable


class TruthBiset(NamedTuple):
    """Verification set and falsification set of a formula."""

    pos: frozenset
    neg: frozenset


class Accessor(Protocol):
    explicit: bool

    def successors(self, w: World, key: Hashable) -> tuple: ...


class ExplicitAccessor:
    """A stored set of triples ``(w, key, v)``; keys are subsets or bi-sets of worlds."""

    explicit = True

    def __init__(self, triples: Iterable[tuple[World, Hashable, World]]):
        self.triples = frozenset(triples)
        index: dict[tuple[World, Hashable], list[World]] = {}
        for w, key, v in self.triples:
            index.setdefault((w, key), []).append(v)
        self._index = {k: tuple(vs) for k, vs in index.items()}

    def successors(self, w: World, key: Hashable) -> tuple:
        return self._index.get((w, key), ())

    def holds(self, w: World, key: Hashable, v: World) -> bool:
        return (w, key, v) in self.triples

    def keys(self) -> set:
        return {key for _, key, _ in self.triples}

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ExplicitAccessor) and self.triples == other.triples

    __hash__ = None  # type: ignore[assignment]


class VirtualAccessor:
    """Accessibility computed on demand by an oracle and cached per query."""

    explicit = False

    def __init__(self, oracle: Callable[[World, Hashable], Iterable[World]]):
        self._oracle = oracle
        self._cache: dict[tuple[World, Hashable], tuple] = {}

    def successors(self, w: World, key: Hashable) -> tuple:
        hit = self._cache.get((w, key))
        if hit is None:
            hit = tuple(self._oracle(w, key))
            self._cache[(w, key)] = hit
        return hit

    def holds(self, w: World, key: Hashable, v: World) -> bool:
        return v in self.successors(w, key)

    def keys(self) -> set:
        return {key for _, key in self._cache}


def biset_key(X: Iterable[World], Y: Iterable[World]) -> tuple[frozenset, frozenset]:
    return (frozenset(X), frozenset(Y))


# classical conditional models


@dataclass(frozen=True, eq=False)
class CkModel:
    worlds: tuple[World, ...]
    valuation: Mapping[PredSym, frozenset]
    accessor: Accessor

    def __post_init__(self) -> None:
        if not self.worlds:
            raise ValueError("a model needs at least one world")

    @classmethod
    def build(cls, worlds: Iterable[World], valuation: Mapping[PredSym, Iterable[World]],
              rel: Iterable[tuple[World, Iterable[World], World]]) -> CkModel:
        worlds = tuple(worlds)
        val = {p: frozenset(ws) for p, ws in valuation.items()}
        acc = ExplicitAccessor((w, frozenset(X), v) for w, X, v in rel)
        return cls(worlds, val, acc)

    @cached_property
    def world_set(self) -> frozenset:
        return frozenset(self.worlds)

    @cached_property
    def signature(self) -> Signature:
        return Signature.of(self.valuation)

    @cached_property
    def _memo(self) -> dict:
        return {}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CkModel):
            return NotImplemented
        return (self.world_set == other.world_set and dict(self.valuation) == dict(other.valuation)
                and self.accessor == other.accessor)

    __hash__ = object.__hash__


def truthset_ck(M: CkModel, phi: cn.CnFormula) -> frozenset:
    """The set of worlds satisfying phi."""
    memo = M._memo
    hit = memo.get(phi)
    if hit is not None:
        return hit
    W = M.world_set
    if isinstance(phi, cn.Prop):
        try:
            out = M.valuation[phi.sym]
        except KeyError:
            raise UnknownSymbol(f"{phi.sym.name} has no valuation") from None
    elif isinstance(phi, cn.Neg):
        out = W - truthset_ck(M, phi.body)
    elif isinstance(phi, cn.And):
        out = truthset_ck(M, phi.left) & truthset_ck(M, phi.right)
    elif isinstance(phi, cn.Or):
        out = truthset_ck(M, phi.left) | truthset_ck(M, phi.right)
    elif isinstance(phi, cn.Imp):
        out = (W - truthset_ck(M, phi.left)) | truthset_ck(M, phi.right)
    elif isinstance(phi, cn.BoxTo):
        key = truthset_ck(M, phi.left)
        cons = truthset_ck(M, phi.right)
        out = frozenset(w for w in M.worlds if all(v in cons for v in M.accessor.successors(w, key)))
    else:
        raise TypeError(f"not a conditional formula: {phi!r}")
    memo[phi] = out
    return out


def eval_ck(M: CkModel, w: World, phi: cn.CnFormula) -> bool:
    if w not in M.world_set:
        raise UnknownWorld(f"{w!r} is not a world of this model")
    return w in truthset_ck(M, phi)


def eval_biset_ck(M: CkModel, w: World, gamma: Iterable[cn.CnFormula], delta: Iterable[cn.CnFormula]) -> bool:
    return all(eval_ck(M, w, g) for g in gamma) and not any(eval_ck(M, w, d) for d in delta)


# Nelsonian conditional models


@dataclass(frozen=True, eq=False)
class NcModel:
    """Preordered worlds, two persistent valuations, bi-set-indexed accessibility.

    With ``strict`` set, every bi-set the evaluator queries is first checked for
    the two frame conditions; a failure raises :class:`ValidationError`.
    """

    worlds: tuple[World, ...]
    leq: frozenset
    valplus: Mapping[PredSym, frozenset]
    valminus: Mapping[PredSym, frozenset]
    accessor: Accessor
    strict: bool = False
    checked_bisets: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if not self.worlds:
            raise ValueError("a model needs at least one world")

    @classmethod
    def build(cls, worlds: Iterable[World], leq: Iterable[tuple[World, World]],
              valplus: Mapping[PredSym, Iterable[World]], valminus: Mapping[PredSym, Iterable[World]],
              rel: Iterable[tuple[World, tuple[Iterable[World], Iterable[World]], World]],
              strict: bool = False) -> NcModel:
        acc = ExplicitAccessor((w, biset_key(X, Y), v) for w, (X, Y), v in rel)
        return cls(tuple(worlds), frozenset(tuple(p) for p in leq),
                   {p: frozenset(ws) for p, ws in valplus.items()},
                   {p: frozenset(ws) for p, ws in valminus.items()}, acc, strict)

    @cached_property
    def world_set(self) -> frozenset:
        return frozenset(self.worlds)

    @cached_property
    def up(self) -> dict:
        return up_sets(self.worlds, self.leq)

    @cached_property
    def signature(self) -> Signature:
        return Signature.of(set(self.valplus) | set(self.valminus))

    @cached_property
    def _memo(self) -> dict:
        return {}

    def successors(self, w: World, key: tuple[frozenset, frozenset]) -> tuple:
        if self.strict and key not in self.checked_bisets:
            bad = frame_violations(self, key)
            self.checked_bisets[key] = bad
            if bad:
                raise ValidationError(str(bad[0]))
        return self.accessor.successors(w, key)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NcModel):
            return NotImplemented
        return (self.world_set == other.world_set and self.leq == other.leq
                and dict(self.valplus) == dict(other.valplus)
                and dict(self.valminus) == dict(other.valminus)
                and self.accessor == other.accessor)

    __hash__ = object.__hash__


def frame_violations(M: NcModel, key: tuple[frozenset, frozenset]) -> list[Violation]:
    """Both frame conditions for one bi-set index.

    c1: w R u and w <= w' give some u' with w' R u' and u <= u'.
    c2: w R u and u <= u' give some w' with w <= w' and w' R u'.
    """
    acc, up = M.accessor, M.up
    out: list[Violation] = []
    for w in M.worlds:
        for u in acc.successors(w, key):
            for w2 in up[w]:
                if not any(u2 in up[u] for u2 in acc.successors(w2, key)):
                    out.append(Violation("c1", f"c1 fails: {w} R {u}, {w} <= {w2}, no matching successor of {w2}",
                                         (w, u, w2, key)))
            for u2 in up[u]:
                if not any(u2 in acc.successors(w2, key) for w2 in up[w]):
                    out.append(Violation("c2", f"c2 fails: {w} R {u}, {u} <= {u2}, no world above {w} reaches {u2}",
                                         (w, u, u2, key)))
    return out


def validate_nc(M: NcModel, keys: Iterable | None = None) -> Report:
    """Preorder, persistent valuations, and the frame conditions on every stored (or given) bi-set."""
    out = preorder_violations(M.worlds, M.leq)
    if out:
        return Report(tuple(out))
    for name, val in (("valplus", M.valplus), ("valminus", M.valminus)):
        for p in sorted(val):
            if not val[p] <= M.world_set:
                out.append(Violation("valuation", f"{name}({p.name}) mentions unknown worlds", p))
            elif not is_upward_closed(val[p], M.up):
                out.append(Violation("valuation persistence", f"{name}({p.name}) is not upward closed", p))
    if keys is None:
        keys = M.accessor.keys()
    for key in sorted(keys, key=lambda k: (sorted(map(str, k[0])), sorted(map(str, k[1])))):
        out.extend(frame_violations(M, key))
    return Report(tuple(out))


def truthset_nc(M: NcModel, phi: cn.CnFormula, boxto_verbatim: bool = False) -> TruthBiset:
    """The bi-set (verifying worlds, falsifying worlds) of phi.

    ``boxto_verbatim`` reads the accessibility in the verification clause of
    ``[]>`` at the evaluation world instead of at each world above it.
    """
    memo = M._memo
    mkey = (phi, boxto_verbatim)
    hit = memo.get(mkey)
    if hit is not None:
        return hit
    if isinstance(phi, cn.Prop):
        try:
            out = TruthBiset(M.valplus[phi.sym], M.valminus[phi.sym])
        except KeyError:
            raise UnknownSymbol(f"{phi.sym.name} has no valuation") from None
    elif isinstance(phi, cn.Neg):
        b = truthset_nc(M, phi.body, boxto_verbatim)
        out = TruthBiset(b.neg, b.pos)
    elif isinstance(phi, (cn.And, cn.Or, cn.Imp, cn.BoxTo)):
        l = truthset_nc(M, phi.left, boxto_verbatim)
        r = truthset_nc(M, phi.right, boxto_verbatim)
        if isinstance(phi, cn.And):
            out = TruthBiset(l.pos & r.pos, l.neg | r.neg)
        elif isinstance(phi, cn.Or):
            out = TruthBiset(l.pos | r.pos, l.neg & r.neg)
        elif isinstance(phi, cn.Imp):
            locally = frozenset(w for w in M.worlds if w not in l.pos or w in r.pos)
            out = TruthBiset(_box_up(M, locally), l.pos & r.neg)
        else:
            key = (l.pos, l.neg)
            locally = frozenset(
                w for w in M.worlds if all(u in r.pos for u in M.successors(w, key)))
            pos = locally if boxto_verbatim else _box_up(M, locally)
            neg = frozenset(w for w in M.worlds if any(u in r.neg for u in M.successors(w, key)))
            out = TruthBiset(pos, neg)
    else:
        raise TypeError(f"not a conditional formula: {phi!r}")
    memo[mkey] = out
    return out


def _box_up(M: NcModel, locally: frozenset) -> frozenset:
    """Worlds all of whose successors in the preorder lie in ``locally``."""
    return frozenset(w for w in M.worlds if all(v in locally for v in M.up[w]))


def eval_nc(M: NcModel, w: World, phi: cn.CnFormula, polarity: str | bool = "+",
            boxto_verbatim: bool = False) -> bool:
    if w not in M.world_set:
        raise UnknownWorld(f"{w!r} is not a world of this model")
    b = truthset_nc(M, phi, boxto_verbatim)
    if polarity in ("+", True):
        return w in b.pos
    if polarity in ("-", False):
        return w in b.neg
    raise ValueError(f"polarity must be '+' or '-', got {polarity!r}")


def eval_biset_nc(M: NcModel, w: World, gamma: Iterable[cn.CnFormula], delta: Iterable[cn.CnFormula]) -> bool:
    return all(eval_nc(M, w, g) for g in gamma) and not any(eval_nc(M, w, d) for d in delta)


# Kripke modal models


@dataclass(frozen=True, eq=False)
class KripkeModalModel:
    """A classical model over the props plus the binary accessibility ``E``."""

    model: ClassicalModel

    def __post_init__(self) -> None:
        for sym in self.model.interp:
            if sym != E and sym.kind != "prop":
                raise ValueError(f"{sym.name} does not belong to a modal signature")

    @property
    def worlds(self) -> tuple:
        return self.model.domain

    @cached_property
    def succ(self) -> dict:
        rel = self.model.interp.get(E, frozenset())
        out: dict = {w: [] for w in self.model.domain}
        for a, b in rel:
            out[a].append(b)
        return {w: tuple(vs) for w, vs in out.items()}

    @cached_property
    def _memo(self) -> dict:
        return {}

    def __eq__(self, other: object) -> bool:
        return isinstance(other, KripkeModalModel) and self.model == other.model

    __hash__ = object.__hash__


def truthset_m(M: KripkeModalModel, phi: md.MdFormula) -> frozenset:
    memo = M._memo
    hit = memo.get(phi)
    if hit is not None:
        return hit
    W = M.model.domain_set
    if isinstance(phi, md.Prop):
        out = frozenset(row[0] for row in M.model.ext(phi.sym))
    elif isinstance(phi, md.Neg):
        out = W - truthset_m(M, phi.body)
    elif isinstance(phi, md.And):
        out = truthset_m(M, phi.left) & truthset_m(M, phi.right)
    elif isinstance(phi, md.Or):
        out = truthset_m(M, phi.left) | truthset_m(M, phi.right)
    elif isinstance(phi, md.Imp):
        out = (W - truthset_m(M, phi.left)) | truthset_m(M, phi.right)
    elif isinstance(phi, md.Box):
        body = truthset_m(M, phi.body)
        out = frozenset(w for w in M.worlds if all(v in body for v in M.succ[w]))
    elif isinstance(phi, md.Diamond):
        body = truthset_m(M, phi.body)
        out = frozenset(w for w in M.worlds if any(v in body for v in M.succ[w]))
    else:
        raise TypeError(f"not a modal formula: {phi!r}")
    memo[phi] = out
    return out


def eval_m(M: KripkeModalModel, w: World, phi: md.MdFormula) -> bool:
    """Classical modal satisfaction; box and diamond range over E-successors."""
    if w not in M.model.domain_set:
        raise UnknownWorld(f"{w!r} is not a world of this model")
    return w in truthset_m(M, phi)


def eval_biset_m(M: KripkeModalModel, w: World, gamma: Iterable[md.MdFormula], delta: Iterable[md.MdFormula]) -> bool:
    return all(eval_m(M, w, g) for g in gamma) and not any(eval_m(M, w, d) for d in delta)
