"""Report values shared by the validators and theory checkers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str
    witness: Any = None

    def __str__(self) -> str:
        return f"{self.kind}: {self.detail}"


@dataclass(frozen=True)
class Report:
    """Outcome of a report-style check; falsy when something failed."""

    violations: tuple[Violation, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def first(self) -> Violation | None:
        return self.violations[0] if self.violations else None

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        return "ok" if self.ok else str(self.first)


def up_sets(worlds: tuple, leq: frozenset) -> dict:
    """For each world w, the tuple of v with w <= v, in world order."""
    return {w: tuple(v for v in worlds if (w, v) in leq) for w in worlds}


def preorder_violations(worlds: tuple, leq: frozenset) -> list[Violation]:
    out = []
    wset = set(worlds)
    for pair in sorted(leq, key=repr):
        if pair[0] not in wset or pair[1] not in wset:
            out.append(Violation("preorder", f"pair {pair} mentions an unknown world", pair))
    for w in worlds:
        if (w, w) not in leq:
            out.append(Violation("preorder", f"not reflexive at {w}", w))
    for (a, b) in leq:
        for (c, d) in leq:
            if b == c and (a, d) not in leq:
                out.append(Violation("preorder", f"not transitive at {a} <= {b} <= {d}", (a, b, d)))
    return out


def is_upward_closed(subset, up: Mapping) -> bool:
    return all(v in subset for w in subset for v in up[w])
