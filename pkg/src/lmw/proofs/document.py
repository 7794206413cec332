"""Plain-text proof documents.

::

    # comment
    system: qn4
    premise: p0(v0)
    delta: p1(v0)
    1. p0(v0) ; premise(1)
    2. p0(v0) -> (p1(v0) -> p0(v0)) ; ax(a1; phi=p0(v0), psi=p1(v0))
    3. p1(v0) -> p0(v0) ; mp(1,2)

Headers come before the numbered lines.  ``delta:`` lines turn the document
into a consecution whose antecedent is the premise list.
"""

from __future__ import annotations

import re
from pathlib import Path

from ..syntax import cn
from ..syntax.base import Node, Var
from ..text.formulas import ParseError, parse_cn, parse_fo, print_formula
from .checker import (
    MP, SYSTEMS, AxiomInstance, Consecution, Derivation, Justification, Premise, RABox, RCBox1,
    RCBox2, RExists, RForall,
)
from .schemas import FORMULA_METAS, VAR_METAS

_LINE_RE = re.compile(r"(\d+)\.\s*(.*)")
_JUST_RE = re.compile(r"([a-z0-9]+)\((.*)\)")


class ProofSyntaxError(ValueError):
    """A proof document that cannot be read; ``line`` is the 1-based text line."""

    def __init__(self, line: int, reason: str):
        super().__init__(f"text line {line}: {reason}")
        self.line = line
        self.reason = reason


def _split_top(text: str, sep: str) -> list[str]:
    """Split at separators outside parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def _parser(system: str):
    return parse_cn if SYSTEMS[system].language is cn else parse_fo


def _bindings(text: str, parse) -> dict:
    out: dict = {}
    for item in _split_top(text, ","):
        if not item:
            continue
        name, eq, value = item.partition("=")
        name = name.strip()
        if not eq:
            raise ValueError(f"binding {item!r} has no '='")
        if name in VAR_METAS:
            out[name] = Var.parse(value)
        elif name in FORMULA_METAS:
            out[name] = parse(value.strip())
        else:
            raise ValueError(f"unknown metavariable {name!r}")
    return out


def _ints(text: str, count: int) -> list[int]:
    parts = [p for p in _split_top(text, ",")]
    if len(parts) != count or not all(p.isdigit() for p in parts):
        raise ValueError(f"expected {count} line number(s), got {text!r}")
    return [int(p) for p in parts]


def parse_justification(text: str, parse=parse_fo) -> Justification:
    m = _JUST_RE.fullmatch(text.strip())
    if not m:
        raise ValueError(f"malformed justification {text!r}")
    name, args = m.groups()
    head, _, rest = args.partition(";")
    if name == "ax":
        return AxiomInstance(head.strip(), _bindings(rest, parse))
    if name == "premise":
        return Premise(*_ints(head, 1))
    if name == "mp":
        return MP(*_ints(head, 2))
    if name in ("rall", "rex"):
        b = _bindings(rest, parse)
        if set(b) != {"x", "y"}:
            raise ValueError(f"{name} needs exactly the bindings x and y")
        return (RForall if name == "rall" else RExists)(_ints(head, 1)[0], b["x"], b["y"])
    rules = {"rabox": RABox, "rcbox1": RCBox1, "rcbox2": RCBox2}
    if name in rules:
        return rules[name](*_ints(head, 1))
    raise ValueError(f"unknown justification {name!r}")


def print_justification(j: Justification) -> str:
    if isinstance(j, AxiomInstance):
        binds = ", ".join(f"{k}={v if isinstance(v, Var) else print_formula(v)}" for k, v in j.bindings.items())
        return f"ax({j.schema}; {binds})" if binds else f"ax({j.schema})"
    if isinstance(j, Premise):
        return f"premise({j.index})"
    if isinstance(j, MP):
        return f"mp({j.minor},{j.major})"
    if isinstance(j, (RForall, RExists)):
        name = "rall" if isinstance(j, RForall) else "rex"
        return f"{name}({j.line}; x={j.x}, y={j.y})"
    name = {RABox: "rabox", RCBox1: "rcbox1", RCBox2: "rcbox2"}[type(j)]
    return f"{name}({j.line})"


def loads_proof(text: str, system: str | None = None) -> Derivation | Consecution:
    """Read a proof document; ``system`` overrides the header when given."""
    header_system = None
    premises: list[Node] = []
    delta: list[Node] = []
    raw: list[tuple[int, int, str, str]] = []
    for n, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        m = _LINE_RE.fullmatch(line)
        if m:
            formula, sep, just = m.group(2).partition(";")
            if not sep:
                raise ProofSyntaxError(n, "a derivation line needs '; <justification>'")
            raw.append((n, int(m.group(1)), formula.strip(), just.strip()))
            continue
        key, colon, value = line.partition(":")
        key = key.strip()
        if not colon:
            raise ProofSyntaxError(n, f"cannot read {line!r}")
        if raw:
            raise ProofSyntaxError(n, "headers must precede the derivation lines")
        if key == "system":
            header_system = value.strip()
        elif key == "premise" or re.fullmatch(r"premise \d+", key):
            premises.append(value.strip())  # parsed once the system is known
        elif key == "delta":
            delta.append(value.strip())
        else:
            raise ProofSyntaxError(n, f"unknown header {key!r}")
    system = system or header_system
    if system is None:
        raise ProofSyntaxError(1, "no system given")
    if system not in SYSTEMS:
        raise ProofSyntaxError(1, f"unknown system {system!r}")
    parse = _parser(system)
    try:
        premises = [parse(p) for p in premises]
        delta = [parse(d) for d in delta]
    except ParseError as exc:
        raise ProofSyntaxError(1, f"header formula: {exc}") from None
    lines = []
    for expected, (n, k, formula, just) in enumerate(raw, start=1):
        if k != expected:
            raise ProofSyntaxError(n, f"expected line number {expected}, found {k}")
        try:
            lines.append((parse(formula), parse_justification(just, parse)))
        except (ParseError, ValueError) as exc:
            raise ProofSyntaxError(n, str(exc)) from None
    d = Derivation(system, tuple(premises), tuple(lines))
    if delta:
        return Consecution(tuple(premises), tuple(delta), d)
    return d


def load_proof(path: str | Path, system: str | None = None) -> Derivation | Consecution:
    return loads_proof(Path(path).read_text(encoding="utf-8"), system)


def dumps_proof(doc: Derivation | Consecution) -> str:
    d = doc.certificate if isinstance(doc, Consecution) else doc
    out = [f"system: {d.system}"]
    out += [f"premise {i}: {print_formula(p)}" for i, p in enumerate(d.premises, start=1)]
    if isinstance(doc, Consecution):
        out += [f"delta: {print_formula(x)}" for x in doc.delta]
    out += [f"{k}. {print_formula(phi)} ; {print_justification(j)}" for k, (phi, j) in enumerate(d.lines, start=1)]
    return "\n".join(out) + "\n"


__all__ = [
    "ProofSyntaxError", "dumps_proof", "load_proof", "loads_proof", "parse_justification",
    "print_justification",
]
