"""Bounded search for points satisfying a consecution pair (Gamma, Delta).

A satisfying point verifies every member of Gamma and no member of Delta, so
it refutes the consequence from Gamma to Delta.  Small shapes are enumerated
exhaustively (conditional models with one world, classical conditional models
with up to two); everything beyond is sampled.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import product
from typing import Any, Callable, Iterable, Iterator, Mapping

from ..semantics.classical import eval_c
from ..semantics.conditional import (
    CkModel, ExplicitAccessor, NcModel, VirtualAccessor, eval_biset_ck, eval_biset_m, eval_biset_nc,
)
from ..semantics.sheaf import eval_biset_i, eval_biset_n
from ..syntax.base import E, PredSym, Var
from ..syntax.ops import free_vars, predicates
from .generators import Bounds, random_model

SEMANTICS = ("c", "i", "n4", "ck", "nc", "m")
NO_COUNTEREXAMPLE = "no counterexample within bounds"

_MODEL_KIND = {"c": "classical", "i": "int-sheaf", "n4": "n4-sheaf", "ck": "ck", "nc": "nc", "m": "kripke-modal"}


@dataclass(frozen=True)
class Countermodel:
    semantics: str
    model: Any
    world: Any
    assignment: Mapping[Var, Any] = field(default_factory=dict)
    exhaustive_phase: bool = False

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class NoneWithinBounds:
    semantics: str
    checked: int
    label: str = NO_COUNTEREXAMPLE

    def __bool__(self) -> bool:
        return False


# lazy exhaustive enumeration


class _Chooser:
    """Replays a choice prefix, then takes the first option; records every choice point."""

    def __init__(self, prefix: list[int]):
        self.prefix = prefix
        self.trail: list[tuple[int, int]] = []

    def __call__(self, n: int) -> int:
        i = len(self.trail)
        c = self.prefix[i] if i < len(self.prefix) else 0
        self.trail.append((c, n))
        return c


def enumerate_choices(run: Callable[[_Chooser], Any]) -> Iterator[Any]:
    """Run ``run`` once per leaf of its decision tree, depth first.

    Only the choices ``run`` actually makes are branched on, so unqueried
    parts of a model are never enumerated.
    """
    prefix: list[int] = []
    while True:
        chooser = _Chooser(prefix)
        yield run(chooser)
        trail = chooser.trail
        i = len(trail) - 1
        while i >= 0 and trail[i][0] + 1 >= trail[i][1]:
            i -= 1
        if i < 0:
            return
        prefix = [c for c, _ in trail[:i]] + [trail[i][0] + 1]


def _subset(items: tuple, mask: int) -> frozenset:
    return frozenset(x for i, x in enumerate(items) if mask >> i & 1)


def _props_of(formulas: Iterable) -> list[PredSym]:
    out: set = set()
    for phi in formulas:
        out |= predicates(phi)
    return sorted(out, key=lambda s: (s.kind != "prop", s.name))


def _materialize(acc: VirtualAccessor) -> ExplicitAccessor:
    return ExplicitAccessor((w, key, v) for (w, key), vs in acc._cache.items() for v in vs)


def _exhaustive_ck(gamma, delta, nworlds: int) -> Iterator[Countermodel | None]:
    worlds = tuple(f"w{i}" for i in range(nworlds))
    props = _props_of(list(gamma) + list(delta))

    def run(choose):
        val = {p: _subset(worlds, choose(2 ** nworlds)) for p in props}
        acc = VirtualAccessor(lambda w, X: sorted(_subset(worlds, choose(2 ** nworlds))))
        M = CkModel(worlds, val, acc)
        for w in worlds:
            if eval_biset_ck(M, w, gamma, delta):
                return Countermodel("ck", CkModel(worlds, val, _materialize(acc)), w, {}, True)
        return None

    return enumerate_choices(run)


def _exhaustive_nc_one_world(gamma, delta) -> Iterator[Countermodel | None]:
    w = "w0"
    worlds = (w,)
    props = _props_of(list(gamma) + list(delta))

    def run(choose):
        plus = {p: _subset(worlds, choose(2)) for p in props}
        minus = {p: _subset(worlds, choose(2)) for p in props}
        acc = VirtualAccessor(lambda u, key: sorted(_subset(worlds, choose(2))))
        M = NcModel(worlds, frozenset({(w, w)}), plus, minus, acc)
        if eval_biset_nc(M, w, gamma, delta):
            return Countermodel("nc", NcModel(worlds, M.leq, plus, minus, _materialize(acc)), w, {}, True)
        return None

    return enumerate_choices(run)


def _assignments(domain: Iterable, variables: list[Var]) -> Iterator[dict]:
    domain = list(domain)
    for values in product(domain, repeat=len(variables)):
        yield dict(zip(variables, values))


def _check_point(semantics: str, M, gamma, delta, variables) -> Countermodel | None:
    if semantics == "ck":
        hit = next((w for w in M.worlds if eval_biset_ck(M, w, gamma, delta)), None)
    elif semantics == "nc":
        hit = next((w for w in M.worlds if eval_biset_nc(M, w, gamma, delta)), None)
    elif semantics == "m":
        hit = next((w for w in M.worlds if eval_biset_m(M, w, gamma, delta)), None)
    elif semantics == "c":
        for f in _assignments(M.domain, variables):
            if all(eval_c(M, f, g) for g in gamma) and not any(eval_c(M, f, d) for d in delta):
                return Countermodel(semantics, M, None, f)
        return None
    else:
        ev = eval_biset_i if semantics == "i" else eval_biset_n
        for w in M.worlds:
            for f in _assignments(M.domain(w), variables):
                if ev(M, w, f, gamma, delta):
                    return Countermodel(semantics, M, w, f)
        return None
    return None if hit is None else Countermodel(semantics, M, hit)


def find_countermodel(semantics: str, gamma: Iterable, delta: Iterable,
                      bounds: Bounds | None = None) -> Countermodel | NoneWithinBounds:
    """First point found that verifies all of gamma and none of delta."""
    if semantics not in SEMANTICS:
        raise ValueError(f"unknown semantics {semantics!r}; expected one of {', '.join(SEMANTICS)}")
    bounds = bounds or Bounds()
    gamma, delta = tuple(gamma), tuple(delta)
    checked = 0
    exhaustive: list[Iterator] = []
    if semantics == "nc":
        exhaustive.append(_exhaustive_nc_one_world(gamma, delta))
    elif semantics == "ck":
        exhaustive += [_exhaustive_ck(gamma, delta, n) for n in range(1, min(2, bounds.worlds) + 1)]
    for stream in exhaustive:
        for hit in stream:
            checked += 1
            if hit is not None:
                return hit
    variables: list[Var] = []
    if semantics in ("c", "i", "n4"):
        variables = sorted(set().union(*(free_vars(phi) for phi in gamma + delta)))
    symbols = tuple(s for s in _props_of(gamma + delta) if s.kind != "epsilon")
    if semantics == "m":
        symbols = tuple(s for s in symbols if s != E)
    nprops = max([int(s.name[1:]) + 1 for s in symbols if s.kind == "prop"] + [1])
    sample_bounds = replace(bounds, props=nprops) if semantics in ("ck", "nc", "m") else bounds
    rng = bounds.rng(f"countermodel:{semantics}")
    for _ in range(bounds.instances):
        M = random_model(rng, _MODEL_KIND[semantics], sample_bounds, symbols)
        checked += 1
        hit = _check_point(semantics, M, gamma, delta, variables)
        if hit is not None:
            return hit
    return NoneWithinBounds(semantics, checked)
