"""Text grammar for formulas and sequents.

Precedence, loosest first: ``->`` (right associative), ``|``, ``&``, then the
prefix operators ``~``, ``[i]``, ``<i>`` and ``forall x.``.  Atoms are
identifiers, ``false``, ``true`` and parenthesized formulas.  ``true``,
``<i>A`` and ``exists x.A`` are sugar for ``~false``, ``~[i]~A`` and
``~forall x.~A``.  Sequents are written ``A1, A2 => B1, B2`` with either side
possibly empty; duplicates are kept.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import List, Tuple

from . import syntax
from .syntax import Formula, LogicError, Multiset, Sequent


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int


@dataclass
class ParseError(LogicError):
    span: SourceSpan
    message: str
    expected: List[str] = field(default_factory=list)

    def __str__(self):
        loc = f"at {self.span.start}..{self.span.end}"
        if self.expected:
            return f"{self.message} {loc} (expected {', '.join(self.expected)})"
        return f"{self.message} {loc}"


_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<seq>=>)
      | (?P<imp>->)
      | (?P<box>\[(?P<boxid>\d+)\])
      | (?P<dia><(?P<diaid>\d+)>)
      | (?P<punct>[&|~(),.])
      | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)

_KEYWORDS = {"false", "true", "forall", "exists"}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: SourceSpan


def _tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(SourceSpan(pos, pos + 1),
                             f"unexpected character {text[pos]!r}")
        pos = m.end()
        if m.lastgroup in ("boxid", "diaid"):
            kind = "box" if m.group("box") else "dia"
        else:
            kind = m.lastgroup
        if kind == "ws":
            continue
        if kind == "punct":
            kind = m.group()
        if kind == "ident" and m.group() in _KEYWORDS:
            kind = m.group()
        tokens.append(Token(kind, m.group(), SourceSpan(m.start(), m.end())))
    tokens.append(Token("eof", "", SourceSpan(len(text), len(text))))
    return tokens


class _Parser:
    def __init__(self, text: str, level: str):
        if level not in ("L1", "L2"):
            raise ValueError("level must be 'L1' or 'L2'")
        self.level = level
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(tok.span, f"unexpected {tok.text or 'end of input'!r}",
                             expected=[kind])
        return self.advance()

    def _agent(self, tok: Token) -> int:
        agent = int(tok.text[1:-1])
        if agent < 1:
            raise ParseError(tok.span, "agent ids start at 1")
        return agent

    def formula(self) -> Formula:
        left = self.disjunction()
        if self.peek().kind == "imp":
            self.advance()
            return syntax.imp(left, self.formula())
        return left

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.peek().kind == "|":
            self.advance()
            f = syntax.or_(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.peek().kind == "&":
            self.advance()
            f = syntax.and_(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "~":
            self.advance()
            return syntax.neg(self.unary())
        if tok.kind == "box":
            self.advance()
            return syntax.box(self._agent(tok), self.unary())
        if tok.kind == "dia":
            self.advance()
            return syntax.diamond(self._agent(tok), self.unary())
        if tok.kind in ("forall", "exists"):
            if self.level == "L1":
                raise ParseError(tok.span, "second-order construct in an L1 context")
            self.advance()
            name = self.expect("ident").text
            self.expect(".")
            body = self.unary()
            if tok.kind == "forall":
                return syntax.forall(name, body)
            return syntax.exists(name, body)
        return self.atom()

    def atom(self) -> Formula:
        tok = self.peek()
        if tok.kind == "false":
            self.advance()
            return syntax.bot()
        if tok.kind == "true":
            self.advance()
            return syntax.top()
        if tok.kind == "ident":
            self.advance()
            return syntax.var(tok.text)
        if tok.kind == "(":
            self.advance()
            f = self.formula()
            self.expect(")")
            return f
        raise ParseError(tok.span, f"unexpected {tok.text or 'end of input'!r}",
                         expected=["formula"])

    def formula_list(self, stop_kinds: Tuple[str, ...]) -> List[Formula]:
        out: List[Formula] = []
        if self.peek().kind in stop_kinds:
            return out
        out.append(self.formula())
        while self.peek().kind == ",":
            self.advance()
            out.append(self.formula())
        return out


def parse_formula(text: str, level: str = "L1") -> Formula:
    """Parse a single formula; raises :class:`ParseError` on bad input."""
    parser = _Parser(text, level)
    f = parser.formula()
    tok = parser.peek()
    if tok.kind != "eof":
        raise ParseError(tok.span, f"trailing input {tok.text!r}", expected=["eof"])
    return f


def parse_sequent(text: str, level: str = "L1") -> Sequent:
    """Parse ``A1, A2 => B1, B2``; either side may be empty."""
    parser = _Parser(text, level)
    ant = parser.formula_list(("seq",))
    parser.expect("seq")
    suc = parser.formula_list(("eof",))
    tok = parser.peek()
    if tok.kind != "eof":
        raise ParseError(tok.span, f"trailing input {tok.text!r}", expected=["eof"])
    return Sequent(Multiset(ant), Multiset(suc))
