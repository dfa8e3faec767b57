"""Recursive-descent parser for the term language.

Grammar (EBNF)::

    term     = product { "+" product } ;
    product  = unary { "*" unary } ;
    unary    = "-" unary
             | "c" "(" { INT } ")" unary
             | "s" "[" INT "|" INT "]" unary
             | "s" "[" [ INT "->" INT { "," INT "->" INT } ] "]" unary
             | primary ;
    primary  = "0" | "1" | IDENT
             | "d" "(" INT "," INT ")"
             | "dE" "{" class { "," class } "}"
             | "(" term ")" ;
    class    = "{" INT { "," INT } "}" ;

``c``, ``s``, ``d`` and ``dE`` are reserved and cannot name variables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .terms import (ONE, ZERO, Cyl, Diag, DiagPair, Not, Repl, Subst, Term, Var, And, Or)

KEYWORDS = {"c", "s", "d", "dE"}

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<arrow>->)
  | (?P<sym>[-+*()\[\]{},|])
""", re.VERBOSE)


class TermSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int, expected: frozenset[str] = frozenset()):
        self.message = message
        self.line = line
        self.column = column
        self.expected = expected
        detail = f"; expected one of {', '.join(sorted(expected))}" if expected else ""
        super().__init__(f"{line}:{column}: {message}{detail}")


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise TermSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "ws":
            for k, ch in enumerate(m.group(), start=pos):
                if ch == "\n":
                    line, line_start = line + 1, k + 1
        else:
            if kind == "ident" and m.group() in KEYWORDS:
                kind = "kw"
            toks.append(_Tok(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


def _describe(tok: _Tok) -> str:
    return "end of input" if tok.kind == "eof" else repr(tok.text)


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.pos]

    def fail(self, expected: set[str], tok: _Tok | None = None, message: str | None = None):
        tok = tok or self.tok
        raise TermSyntaxError(message or f"unexpected {_describe(tok)}", tok.line, tok.column,
                              frozenset(expected))

    def at(self, text: str) -> bool:
        return self.tok.text == text and self.tok.kind != "eof"

    def expect(self, text: str) -> _Tok:
        if not self.at(text):
            self.fail({repr(text)})
        tok = self.tok
        self.pos += 1
        return tok

    def integer(self) -> int:
        if self.tok.kind != "int":
            self.fail({"integer"})
        value = int(self.tok.text)
        self.pos += 1
        return value

    def term(self) -> Term:
        t = self.product()
        while self.at("+"):
            self.pos += 1
            t = Or(t, self.product())
        return t

    def product(self) -> Term:
        t = self.unary()
        while self.at("*"):
            self.pos += 1
            t = And(t, self.unary())
        return t

    def unary(self) -> Term:
        tok = self.tok
        if self.at("-"):
            self.pos += 1
            return Not(self.unary())
        if tok.kind == "kw" and tok.text == "c":
            self.pos += 1
            self.expect("(")
            gamma: list[int] = []
            while self.tok.kind == "int":
                start = self.tok
                v = self.integer()
                if v in gamma:
                    self.fail(set(), start, f"coordinate {v} repeated in c(...)")
                gamma.append(v)
            if not self.at(")"):
                self.fail({"integer", "')'"})
            self.pos += 1
            return Cyl(frozenset(gamma), self.unary())
        if tok.kind == "kw" and tok.text == "s":
            self.pos += 1
            self.expect("[")
            if self.at("]"):
                self.pos += 1
                return Subst((), self.unary())
            first = self.integer()
            if self.at("|"):
                self.pos += 1
                j = self.integer()
                if first == j:
                    self.fail(set(), tok, f"replacement s[{first}|{j}] needs distinct coordinates")
                self.expect("]")
                return Repl(first, j, self.unary())
            mapping: dict[int, int] = {}
            src, src_tok = first, self.toks[self.pos - 1]
            while True:
                if not self.at("->"):
                    self.fail({"'->'", "'|'"} if not mapping else {"'->'"})
                self.pos += 1
                if src in mapping:
                    self.fail(set(), src_tok, f"duplicate entry for {src} in s[...]")
                mapping[src] = self.integer()
                if self.at("]"):
                    self.pos += 1
                    break
                if not self.at(","):
                    self.fail({"','", "']'"})
                self.pos += 1
                src_tok = self.tok
                src = self.integer()
            return Subst(tuple(sorted(mapping.items())), self.unary())
        return self.primary()

    def primary(self) -> Term:
        tok = self.tok
        if tok.kind == "int":
            if tok.text not in ("0", "1"):
                self.fail({"'0'", "'1'"}, message=f"constant must be 0 or 1, got {tok.text}")
            self.pos += 1
            return ZERO if tok.text == "0" else ONE
        if tok.kind == "ident":
            self.pos += 1
            return Var(tok.text)
        if tok.kind == "kw" and tok.text == "d":
            self.pos += 1
            self.expect("(")
            i = self.integer()
            self.expect(",")
            j = self.integer()
            self.expect(")")
            return DiagPair(i, j)
        if tok.kind == "kw" and tok.text == "dE":
            self.pos += 1
            self.expect("{")
            classes: list[tuple[int, ...]] = []
            seen: set[int] = set()
            while True:
                self.expect("{")
                cls: list[int] = []
                while True:
                    start = self.tok
                    v = self.integer()
                    if v in seen:
                        self.fail(set(), start, f"point {v} listed twice in dE{{...}}")
                    seen.add(v)
                    cls.append(v)
                    if self.at("}"):
                        self.pos += 1
                        break
                    if not self.at(","):
                        self.fail({"','", "'}'"})
                    self.pos += 1
                classes.append(tuple(sorted(cls)))
                if self.at("}"):
                    self.pos += 1
                    break
                if not self.at(","):
                    self.fail({"','", "'}'"})
                self.pos += 1
            return Diag(tuple(sorted(classes)))
        if self.at("("):
            self.pos += 1
            t = self.term()
            self.expect(")")
            return t
        self.fail({"'0'", "'1'", "identifier", "'('", "'-'", "'c'", "'s'", "'d'", "'dE'"})

    def parse(self) -> Term:
        t = self.term()
        if self.tok.kind != "eof":
            self.fail({"'+'", "'*'", "end of input"})
        return t


def parse(text: str) -> Term:
    """Parse one term; raises :class:`TermSyntaxError` with position and expected tokens."""
    return _Parser(text).parse()


def parse_term_file(text: str) -> list[tuple[int, Term]]:
    """Parse a term file: one term per line, ``#`` starts a comment.

    Returns ``(line_number, term)`` pairs; errors report the file line.
    """
    out = []
    for n, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        if not body.strip():
            continue
        try:
            out.append((n, parse(body)))
        except TermSyntaxError as e:
            raise TermSyntaxError(e.message, n, e.column, e.expected) from None
    return out
