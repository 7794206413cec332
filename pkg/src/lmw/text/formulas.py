"""Concrete ASCII syntax for the three formula languages.

Grammar, loosest binding first::

    expr   := disj (IMPOP expr)?            IMPOP: -> => <=> <-> []> <>->
    disj   := conj ('|' conj)*
    conj   := unary (('&' | '&&&') unary)*
    unary  := '~' unary | '[]' unary | '<>' unary
            | ('forall' | 'exists') VAR '.' expr
            | atom | '(' expr ')'

Implication-like operators share one level and associate to the right.  A
binder body extends as far right as possible.  ``=>``, ``<=>``, ``<->``, ``&&&``
and ``<>->`` are macros expanded while parsing; the printer never re-sugars them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable

from ..errors import LmwError
from ..syntax import cn, fo, md
from ..syntax.base import Node, PredSym, Var
from ..syntax.derived import ampersand, equiv, expand_diamondto, strong_equiv, strong_imp


@dataclass(frozen=True)
class SourceSpan:
    """Byte offsets into the parsed text."""

    start: int
    end: int

    def __post_init__(self) -> None:
        if not 0 <= self.start <= self.end:
            raise ValueError(f"bad span {self.start}..{self.end}")


class ParseError(LmwError):
    def __init__(self, message: str, span: SourceSpan, expected: frozenset[str] = frozenset()):
        detail = f" (expected one of: {', '.join(sorted(expected))})" if expected else ""
        super().__init__(f"{message} at bytes {span.start}..{span.end}{detail}")
        self.span = span
        self.expected = expected


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<op><>->|<=>|<->|\[\]>|&&&|->|=>|\[\]|<>|[~&|(),.=])
  | (?P<name>[A-Za-z][A-Za-z0-9_]*(?:[+-](?=\s*\())?)
    """,
    re.VERBOSE,
)

_IMP_OPS = ("->", "=>", "<=>", "<->", "[]>", "<>->")


@dataclass(frozen=True)
class _Tok:
    kind: str  # "op", "name" or "eof"
    text: str
    start: int
    end: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(
                f"unexpected character {text[pos]!r}", _byte_span(text, pos, pos + 1)
            )
        if m.lastgroup != "ws":
            toks.append(_Tok(m.lastgroup, m.group(), m.start(), m.end()))
        pos = m.end()
    toks.append(_Tok("eof", "", len(text), len(text)))
    return toks


def _byte_span(text: str, start: int, end: int) -> SourceSpan:
    b0 = len(text[:start].encode("utf-8"))
    return SourceSpan(b0, b0 + len(text[start:end].encode("utf-8")))


_VAR_RE = re.compile(r"v(\d+)")
_PROP_RE = re.compile(r"p\d+")


class _Parser:
    """Shared precedence-climbing parser, parameterised by language."""

    def __init__(self, text: str, lang: str, dialect: str = md.BOX_ONLY):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.lang = lang
        self.dialect = dialect
        self.L = {"fo": fo, "cn": cn, "md": md}[lang]

    # token helpers
    def peek(self) -> _Tok:
        return self.toks[self.i]

    def advance(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, message: str, tok: _Tok, expected: set[str] | None = None) -> ParseError:
        return ParseError(message, _byte_span(self.text, tok.start, tok.end), frozenset(expected or ()))

    def expect(self, text: str) -> _Tok:
        tok = self.peek()
        if tok.text != text or tok.kind == "eof":
            raise self.error(f"expected {text!r}, found {tok.text or 'end of input'!r}", tok, {text})
        return self.advance()

    def parse(self) -> Node:
        phi = self.expr()
        tok = self.peek()
        if tok.kind != "eof":
            raise self.error(f"unexpected {tok.text!r}", tok, self._binary_ops() | {"end of input"})
        return phi

    def _binary_ops(self) -> set[str]:
        ops = {"&", "&&&", "|", "->", "=>", "<=>", "<->"}
        if self.lang == "cn":
            ops |= {"[]>", "<>->"}
        return ops

    # grammar
    def expr(self) -> Node:
        left = self.disj()
        tok = self.peek()
        if tok.kind == "op" and tok.text in _IMP_OPS:
            if tok.text in ("[]>", "<>->") and self.lang != "cn":
                raise self.error(f"{tok.text!r} is only available in the conditional language", tok)
            self.advance()
            right = self.expr()
            return self._imp(tok.text, left, right)
        return left

    def _imp(self, op: str, left: Node, right: Node) -> Node:
        if op == "->":
            return self.L.Imp(left, right)
        if op == "=>":
            return strong_imp(left, right)
        if op == "<=>":
            return strong_equiv(left, right)
        if op == "<->":
            return equiv(left, right)
        if op == "[]>":
            return cn.BoxTo(left, right)
        return expand_diamondto(left, right)

    def disj(self) -> Node:
        left = self.conj()
        while self.peek().text == "|" and self.peek().kind == "op":
            self.advance()
            left = self.L.Or(left, self.conj())
        return left

    def conj(self) -> Node:
        left = self.unary()
        while self.peek().kind == "op" and self.peek().text in ("&", "&&&"):
            op = self.advance().text
            right = self.unary()
            left = self.L.And(left, right) if op == "&" else ampersand(left, right)
        return left

    def unary(self) -> Node:
        tok = self.peek()
        if tok.kind == "op":
            if tok.text == "~":
                self.advance()
                return self.L.Neg(self.unary())
            if tok.text == "[]" and self.lang == "md":
                self.advance()
                return md.Box(self.unary())
            if tok.text == "<>" and self.lang == "md":
                self.advance()
                body = self.unary()
                if self.dialect == md.WITH_DIAMOND:
                    return md.Diamond(body)
                return md.Neg(md.Box(md.Neg(body)))
            if tok.text == "(":
                self.advance()
                phi = self.expr()
                self.expect(")")
                return phi
        if tok.kind == "name":
            if tok.text in ("forall", "exists"):
                if self.lang != "fo":
                    raise self.error("quantifiers belong to the first-order language", tok)
                self.advance()
                var = self.var()
                self.expect(".")
                body = self.expr()
                return (fo.Forall if tok.text == "forall" else fo.Exists)(var, body)
            return self.atom()
        raise self.error(
            f"expected a formula, found {tok.text or 'end of input'!r}", tok, self._starters()
        )

    def _starters(self) -> set[str]:
        out = {"~", "(", "atom"}
        if self.lang == "md":
            out |= {"[]", "<>"}
        if self.lang == "fo":
            out |= {"forall", "exists", "variable"}
        return out

    def var(self) -> Var:
        tok = self.peek()
        m = _VAR_RE.fullmatch(tok.text) if tok.kind == "name" else None
        if not m:
            raise self.error(f"expected a variable, found {tok.text or 'end of input'!r}", tok, {"vN"})
        self.advance()
        return Var(int(m.group(1)))

    def atom(self) -> Node:
        tok = self.advance()
        if self.lang != "fo":
            if not _PROP_RE.fullmatch(tok.text):
                raise self.error(f"expected a propositional letter, found {tok.text!r}", tok, {"pN"})
            return self.L.Prop(PredSym(tok.text, 1))
        if _VAR_RE.fullmatch(tok.text):
            self.i -= 1
            left = self.var()
            self.expect("=")
            return fo.Eq(left, self.var())
        try:
            sym = PredSym.named(tok.text)
        except ValueError:
            raise self.error(f"unknown predicate symbol {tok.text!r}", tok) from None
        self.expect("(")
        args = [self.var()]
        while self.peek().text == ",":
            self.advance()
            args.append(self.var())
        close = self.expect(")")
        if len(args) != sym.arity:
            span_tok = _Tok("name", tok.text, tok.start, close.end)
            raise self.error(f"{sym.name} takes {sym.arity} arguments, got {len(args)}", span_tok)
        return fo.Pred(sym, tuple(args))


def parse_fo(text: str) -> fo.FoFormula:
    return _Parser(text, "fo").parse()  # type: ignore[return-value]


def parse_cn(text: str) -> cn.CnFormula:
    return _Parser(text, "cn").parse()  # type: ignore[return-value]


def parse_md(text: str, dialect: str = md.WITH_DIAMOND) -> md.MdFormula:
    """Parse a modal formula.

    In the box-only dialect ``<>A`` is read as the abbreviation ``~[]~A``.
    """
    if dialect not in md.DIALECTS:
        raise ValueError(f"unknown modal dialect {dialect!r}")
    return _Parser(text, "md", dialect).parse()  # type: ignore[return-value]


PARSERS: dict[str, Callable[[str], Node]] = {"fo": parse_fo, "cn": parse_cn, "md": parse_md}


# printing

_BIN_OPS = {
    fo.And: "&", fo.Or: "|", fo.Imp: "->",
    cn.And: "&", cn.Or: "|", cn.Imp: "->", cn.BoxTo: "[]>",
    md.And: "&", md.Or: "|", md.Imp: "->",
}


def _print(phi: Node, bare_binder: bool) -> str:
    kind = type(phi)
    if kind in _BIN_OPS:
        return f"({_print(phi.left, False)} {_BIN_OPS[kind]} {_print(phi.right, False)})"
    if kind in (fo.Neg, cn.Neg, md.Neg):
        return "~" + _print(phi.body, False)
    if kind is fo.Pred:
        return f"{phi.sym.name}({','.join(str(a) for a in phi.args)})"
    if kind is fo.Eq:
        return f"({phi.left} = {phi.right})"
    if kind in (cn.Prop, md.Prop):
        return phi.sym.name
    if kind is md.Box:
        return "[]" + _print(phi.body, False)
    if kind is md.Diamond:
        return "<>" + _print(phi.body, False)
    if kind in (fo.Forall, fo.Exists):
        word = "forall" if kind is fo.Forall else "exists"
        text = f"{word} {phi.var} . {_print(phi.body, True)}"
        return text if bare_binder else f"({text})"
    raise TypeError(f"not a formula: {phi!r}")


def print_formula(phi: Node) -> str:
    """Canonical fully parenthesised text; parses back to an equal tree."""
    return _print(phi, True)


print_fo = print_cn = print_md = print_formula
