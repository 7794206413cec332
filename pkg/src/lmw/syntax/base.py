"""Variables, predicate symbols, signatures and the immutable node base class."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable


class Node:
    """Immutable AST node with structural equality and a cached hash.

    Subclasses are ``@dataclass(frozen=True, eq=False)``; equality and hashing
    live here so the hash of a deep tree is computed once.  Evaluators memoise
    on formula nodes, which makes the cached hash matter.
    """

    __match_args__: tuple[str, ...] = ()

    def _key(self) -> tuple:
        cached = self.__dict__.get("_fields")
        if cached is None:
            cached = tuple(getattr(self, name) for name in self.__match_args__)
            self.__dict__["_fields"] = cached
        return cached

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if type(self) is not type(other):
            return NotImplemented
        return hash(self) == hash(other) and self._key() == other._key()

    def __ne__(self, other: object) -> bool:
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self) -> int:
        cached = self.__dict__.get("_hash")
        if cached is None:
            cached = hash((type(self).__name__,) + self._key())
            self.__dict__["_hash"] = cached
        return cached

    def children(self) -> tuple[Node, ...]:
        cached = self.__dict__.get("_children")
        if cached is None:
            cached = tuple(v for v in self._key() if isinstance(v, Node))
            self.__dict__["_children"] = cached
        return cached


_INTERNED: dict = {}


def intern_node(node: Node) -> Node:
    """Canonical shared instance of ``node``, so equal subtrees compare by identity."""
    canon = node.__dict__.get("_canonical")
    if canon is not None:
        return canon
    key = node._key()
    fields = tuple(intern_node(v) if isinstance(v, Node) else v for v in key)
    rebuilt = type(node)(*fields) if any(a is not b for a, b in zip(fields, key)) else node
    # children are canonical now, so this lookup compares shallowly
    canon = _INTERNED.setdefault(rebuilt, rebuilt)
    canon.__dict__["_canonical"] = canon
    node.__dict__["_canonical"] = canon
    return canon


@dataclass(frozen=True, order=True)
class Var:
    """Individual variable ``v_n``; printed as ``v<n>``."""

    index: int

    def __post_init__(self) -> None:
        if self.index < 0:
            raise ValueError(f"variable index must be non-negative, got {self.index}")

    def __str__(self) -> str:
        return f"v{self.index}"

    def __repr__(self) -> str:
        return f"Var({self.index})"

    @classmethod
    def parse(cls, text: str) -> Var:
        m = re.fullmatch(r"v(\d+)", text.strip())
        if not m:
            raise ValueError(f"not a variable: {text!r}")
        return cls(int(m.group(1)))


_BASE_ARITY = {"S": 1, "O": 1, "E": 2, "R": 3}
_PROP_RE = re.compile(r"p(\d+)")


def _base_kind(name: str) -> str | None:
    if name in _BASE_ARITY:
        return name
    if name == "eps":
        return "epsilon"
    if _PROP_RE.fullmatch(name):
        return "prop"
    return None


def _base_arity(name: str) -> int:
    if name == "eps":
        return 2
    return _BASE_ARITY.get(name, 1)


@dataclass(frozen=True, order=True)
class PredSym:
    """A predicate letter.

    Kinds: ``prop`` (``p<n>``), ``S``, ``O``, ``E``, ``R``, ``epsilon`` (``eps``),
    and the signed copies ``positive``/``negative`` named ``P+``/``P-``, which
    keep the arity of their base symbol.
    """

    name: str
    arity: int

    def __post_init__(self) -> None:
        base = self.base_name
        if _base_kind(base) is None:
            raise ValueError(f"unknown predicate symbol {self.name!r}")
        if self.name != base and base == "eps":
            raise ValueError("eps has no signed copies")
        if self.arity != _base_arity(base):
            raise ValueError(
                f"{self.name} must have arity {_base_arity(base)}, got {self.arity}"
            )

    @property
    def base_name(self) -> str:
        if self.name.endswith(("+", "-")):
            return self.name[:-1]
        return self.name

    @property
    def kind(self) -> str:
        if self.name.endswith("+"):
            return "positive"
        if self.name.endswith("-"):
            return "negative"
        return _base_kind(self.name)  # type: ignore[return-value]

    @property
    def is_signed(self) -> bool:
        return self.kind in ("positive", "negative")

    def base(self) -> PredSym:
        return PredSym(self.base_name, self.arity)

    def plus(self) -> PredSym:
        if self.is_signed or self.kind == "epsilon":
            raise ValueError(f"cannot sign {self.name}")
        return PredSym(self.name + "+", self.arity)

    def minus(self) -> PredSym:
        if self.is_signed or self.kind == "epsilon":
            raise ValueError(f"cannot sign {self.name}")
        return PredSym(self.name + "-", self.arity)

    @classmethod
    def named(cls, name: str) -> PredSym:
        base = name[:-1] if name.endswith(("+", "-")) else name
        if _base_kind(base) is None:
            raise ValueError(f"unknown predicate symbol {name!r}")
        return cls(name, _base_arity(base))

    def __str__(self) -> str:
        return self.name


def prop(n: int) -> PredSym:
    return PredSym(f"p{n}", 1)


S = PredSym("S", 1)
O = PredSym("O", 1)
E = PredSym("E", 2)
R = PredSym("R", 3)
EPS = PredSym("eps", 2)


@dataclass(frozen=True)
class Signature:
    """A finite set of predicate symbols plus the ordered list of active props."""

    symbols: frozenset[PredSym]
    props: tuple[PredSym, ...] = field(default=())

    def __post_init__(self) -> None:
        names = [s.name for s in self.symbols]
        if len(names) != len(set(names)):
            raise ValueError("duplicate symbol names in signature")
        for p in self.props:
            if p.kind != "prop":
                raise ValueError(f"{p.name} is not a prop symbol")
            if p not in self.symbols:
                raise ValueError(f"prop {p.name} missing from symbols")

    @classmethod
    def of(cls, symbols: Iterable[PredSym]) -> Signature:
        symbols = frozenset(symbols)
        props = tuple(sorted((s for s in symbols if s.kind == "prop"), key=_prop_index))
        return cls(symbols, props)

    @classmethod
    def conditional(cls, nprops: int) -> Signature:
        """The correspondence signature: ``S, O, E, R`` and ``p0 .. p<n-1>``."""
        props = tuple(prop(i) for i in range(nprops))
        return cls(frozenset((S, O, E, R) + props), props)

    @classmethod
    def modal(cls, nprops: int) -> Signature:
        props = tuple(prop(i) for i in range(nprops))
        return cls(frozenset((E,) + props), props)

    @classmethod
    def propositional(cls, nprops: int) -> Signature:
        props = tuple(prop(i) for i in range(nprops))
        return cls(frozenset(props), props)

    def signed(self) -> Signature:
        """The signed signature: every symbol split into ``+``/``-`` copies, plus ``eps``."""
        out: set[PredSym] = {EPS}
        for s in self.symbols:
            if s.is_signed or s.kind == "epsilon":
                raise ValueError("signature is already signed")
            out.add(s.plus())
            out.add(s.minus())
        return Signature(frozenset(out), ())

    def unsigned(self) -> Signature:
        """Inverse of :meth:`signed`."""
        base = {s.base() for s in self.symbols if s.is_signed}
        return Signature.of(base)

    def with_eps(self) -> Signature:
        return Signature(self.symbols | {EPS}, self.props)

    def __contains__(self, sym: object) -> bool:
        return sym in self.symbols

    def sorted_symbols(self) -> list[PredSym]:
        return sorted(self.symbols, key=symbol_order)


def _prop_index(sym: PredSym) -> int:
    m = _PROP_RE.fullmatch(sym.base_name)
    return int(m.group(1)) if m else -1


def symbol_order(sym: PredSym) -> tuple:
    """Deterministic symbol order: props by index, then S O E R eps, signs after base."""
    base = sym.base_name
    rank = {"S": 1, "O": 2, "E": 3, "R": 4, "eps": 5}.get(base, 0)
    sign = {"prop": 0}.get(sym.kind, {"positive": 1, "negative": 2}.get(sym.kind, 0))
    return (rank, _prop_index(sym), sign)
