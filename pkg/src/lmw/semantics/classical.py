"""Classical first-order models, homomorphisms and classical satisfaction."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from ..errors import NotTotal, UnboundVariable, UnknownSymbol
from ..syntax.base import PredSym, Signature, Var
from ..syntax.fo import And, Eq, Exists, FoFormula, Forall, Imp, Neg, Or, Pred
from ..syntax.ops import free_vars, fv_key, predicates

Element = str
Assignment = Mapping[Var, Element]


@dataclass(frozen=True, eq=False)
class ClassicalModel:
    """Finite nonempty domain plus one tuple set per predicate symbol."""

    domain: tuple[Element, ...]
    interp: Mapping[PredSym, frozenset[tuple[Element, ...]]]

    def __post_init__(self) -> None:
        if not self.domain:
            raise ValueError("domain must be nonempty")
        if len(set(self.domain)) != len(self.domain):
            raise ValueError("duplicate domain elements")
        dom = self.domain_set
        for sym, rows in self.interp.items():
            for row in rows:
                if len(row) != sym.arity:
                    raise ValueError(f"{sym.name}: tuple {row} has wrong length")
                for e in row:
                    if e not in dom:
                        raise ValueError(f"{sym.name}: {e!r} is not in the domain")

    @classmethod
    def build(
        cls,
        domain: Iterable[Element],
        interp: Mapping[PredSym, Iterable[Iterable[Element]]],
        signature: Signature | None = None,
    ) -> ClassicalModel:
        table = {sym: frozenset(tuple(r) for r in rows) for sym, rows in interp.items()}
        if signature is not None:
            for sym in signature.symbols:
                table.setdefault(sym, frozenset())
        return cls(tuple(domain), table)

    @cached_property
    def domain_set(self) -> frozenset[Element]:
        return frozenset(self.domain)

    @cached_property
    def signature(self) -> Signature:
        return Signature.of(self.interp)

    def ext(self, sym: PredSym) -> frozenset[tuple[Element, ...]]:
        try:
            return self.interp[sym]
        except KeyError:
            raise UnknownSymbol(f"{sym.name} is not interpreted in this model") from None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClassicalModel):
            return NotImplemented
        return self.domain_set == other.domain_set and dict(self.interp) == dict(other.interp)

    def __hash__(self) -> int:
        return hash((self.domain_set, frozenset(self.interp.items())))

    @cached_property
    def _memo(self) -> dict:
        return {}


def _check_point(M: ClassicalModel, f: Assignment, phi: FoFormula) -> None:
    missing = free_vars(phi) - set(f)
    if missing:
        names = ", ".join(str(v) for v in sorted(missing))
        raise UnboundVariable(f"no value for {names}")
    for sym in predicates(phi):
        M.ext(sym)
    for v in free_vars(phi):
        if f[v] not in M.domain_set:
            raise UnknownSymbol(f"{v} is assigned {f[v]!r}, which is outside the domain")


def eval_c(M: ClassicalModel, f: Assignment, phi: FoFormula) -> bool:
    """Classical satisfaction; strong negation is complement."""
    _check_point(M, f, phi)
    return _ev(M, M._memo, dict(f), phi)


def _ev(M: ClassicalModel, memo: dict, f: dict, phi: FoFormula) -> bool:
    key = (phi, tuple(f[v] for v in fv_key(phi)))
    hit = memo.get(key)
    if hit is not None:
        return hit
    if isinstance(phi, Pred):
        out = tuple(f[a] for a in phi.args) in M.interp[phi.sym]
    elif isinstance(phi, Eq):
        out = f[phi.left] == f[phi.right]
    elif isinstance(phi, Neg):
        out = not _ev(M, memo, f, phi.body)
    elif isinstance(phi, And):
        out = _ev(M, memo, f, phi.left) and _ev(M, memo, f, phi.right)
    elif isinstance(phi, Or):
        out = _ev(M, memo, f, phi.left) or _ev(M, memo, f, phi.right)
    elif isinstance(phi, Imp):
        out = (not _ev(M, memo, f, phi.left)) or _ev(M, memo, f, phi.right)
    elif isinstance(phi, (Forall, Exists)):
        want = isinstance(phi, Exists)
        out = not want
        g = dict(f)
        for a in M.domain:
            g[phi.var] = a
            if _ev(M, memo, g, phi.body) == want:
                out = want
                break
    else:
        raise TypeError(f"not a first-order formula: {phi!r}")
    memo[key] = out
    return out


def eval_biset_c(
    M: ClassicalModel, f: Assignment, gamma: Iterable[FoFormula], delta: Iterable[FoFormula]
) -> bool:
    """Every member of gamma true and every member of delta false."""
    return all(eval_c(M, f, g) for g in gamma) and not any(eval_c(M, f, d) for d in delta)


def is_homomorphism(h: Mapping[Element, Element], M: ClassicalModel, N: ClassicalModel) -> bool:
    """h preserves every predicate extension of M into N."""
    for a in M.domain:
        if a not in h:
            raise NotTotal(f"map is undefined on {a!r}")
        if h[a] not in N.domain_set:
            raise NotTotal(f"{a!r} maps to {h[a]!r}, outside the target domain")
    for sym, rows in M.interp.items():
        target = N.interp.get(sym, frozenset())
        for row in rows:
            if tuple(h[a] for a in row) not in target:
                return False
    return True


def homomorphism_failure(
    h: Mapping[Element, Element], M: ClassicalModel, N: ClassicalModel
) -> tuple[PredSym, tuple[Element, ...]] | None:
    """The first (symbol, tuple) whose image is missing, or None."""
    for sym in sorted(M.interp, key=lambda s: s.name):
        target = N.interp.get(sym, frozenset())
        for row in sorted(M.interp[sym]):
            if tuple(h[a] for a in row) not in target:
                return sym, row
    return None


def compose(h: Mapping[Element, Element], g: Mapping[Element, Element]) -> dict[Element, Element]:
    """Apply h first, then g."""
    return {a: g[b] for a, b in h.items()}
