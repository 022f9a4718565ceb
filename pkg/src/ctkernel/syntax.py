"""Concrete syntax: lexer, parser and precedence-aware printer.

Grammar (ASCII), loosest binding first::

    term   ::= binder | imp
    binder ::= 'lam' NAME '.' term
             | 'forall' NAME ':' term '.' term
             | 'exists' NAME ':' term '.' term
             | 'case' term 'of' 'inl' NAME '->' term '|' 'inr' NAME '->' term
    imp    ::= or ('=>' term)?                  -- right associative
    or     ::= and ('\\/' and)*                 -- left associative
    and    ::= app ('/\\' app)*                 -- left associative
    app    ::= prefix prefix*                   -- left associative
    prefix ::= ('fst'|'snd'|'inl'|'inr') prefix | atom
    atom   ::= 'it' | 'True' | 'False' | NAME | '<' term ',' term '>'
             | '(' term ')'

``A => B`` parses to a universal quantifier with an unused binder and
``A /\\ B`` to an existential with an unused binder; the printer folds a
quantifier whose binder does not occur in the family back into the
operator form.  Open terms parse fine (free variables are the caller's
concern); syntax errors carry line and column.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List

from .terms import (
    App, Case, Disj, Exists, Forall, Fst, Inl, Inr, It, Lam, Pair, Snd,
    TFalse, TTrue, Term, Var, free_vars,
)

KEYWORDS = {
    "it", "True", "False", "lam", "fst", "snd", "inl", "inr",
    "case", "of", "forall", "exists",
}

_PUNCT2 = ("->", "=>", "/\\", "\\/", "|-")
_PUNCT1 = "()<>,.:|"


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str  # 'name', 'kw', 'punct', 'eof'
    text: str
    line: int
    col: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if c == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        two = text[i:i + 2]
        if two in _PUNCT2:
            tokens.append(Token("punct", two, line, col))
            i += 2
            col += 2
            continue
        if c in _PUNCT1:
            tokens.append(Token("punct", c, line, col))
            i += 1
            col += 1
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            kind = "kw" if word in KEYWORDS else "name"
            tokens.append(Token(kind, word, line, col))
            col += j - i
            i = j
            continue
        raise ParseError(f"unexpected character {c!r}", line, col)
    tokens.append(Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str) -> "ParseError":
        tok = self.peek()
        at = f"at {tok.text!r}" if tok.kind != "eof" else "at end of input"
        return ParseError(f"{message} {at}", tok.line, tok.col)

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok.text != text or tok.kind == "name":
            raise self.fail(f"expected {text!r}")
        return self.advance()

    def expect_name(self) -> str:
        tok = self.peek()
        if tok.kind != "name":
            raise self.fail("expected a variable name")
        return self.advance().text

    # -- grammar ------------------------------------------------------

    def term(self) -> Term:
        tok = self.peek()
        if tok.kind == "kw" and tok.text in ("lam", "forall", "exists", "case"):
            return self.binder()
        return self.imp()

    def binder(self) -> Term:
        tok = self.advance()
        if tok.text == "lam":
            name = self.expect_name()
            self.expect(".")
            return Lam(name, self.term())
        if tok.text in ("forall", "exists"):
            name = self.expect_name()
            self.expect(":")
            domain = self.term()
            self.expect(".")
            family = self.term()
            ctor = Forall if tok.text == "forall" else Exists
            return ctor(domain, name, family)
        if tok.text == "case":
            scrutinee = self.term()
            self.expect("of")
            self.expect("inl")
            lb = self.expect_name()
            self.expect("->")
            lbody = self.term()
            self.expect("|")
            self.expect("inr")
            rb = self.expect_name()
            self.expect("->")
            rbody = self.term()
            return Case(scrutinee, lb, lbody, rb, rbody)
        raise self.fail("expected a binder")

    def imp(self) -> Term:
        left = self.or_level()
        if self.peek().text == "=>":
            self.advance()
            return Forall(left, "_", self.term())
        return left

    def or_level(self) -> Term:
        t = self.and_level()
        while self.peek().text == "\\/":
            self.advance()
            t = Disj(t, self.and_level())
        return t

    def and_level(self) -> Term:
        t = self.app()
        while self.peek().text == "/\\":
            self.advance()
            t = Exists(t, "_", self.app())
        return t

    _ATOM_STARTS = ("it", "True", "False", "<", "(")

    def _starts_operand(self) -> bool:
        tok = self.peek()
        if tok.kind == "name":
            return True
        if tok.kind == "kw" and tok.text in ("it", "True", "False", "fst", "snd", "inl", "inr"):
            return True
        return tok.kind == "punct" and tok.text in ("<", "(")

    def app(self) -> Term:
        t = self.prefix()
        while self._starts_operand():
            t = App(t, self.prefix())
        return t

    def prefix(self) -> Term:
        tok = self.peek()
        if tok.kind == "kw" and tok.text in ("fst", "snd", "inl", "inr"):
            self.advance()
            arg = self.prefix()
            ctor = {"fst": Fst, "snd": Snd, "inl": Inl, "inr": Inr}[tok.text]
            return ctor(arg)
        return self.atom()

    def atom(self) -> Term:
        tok = self.peek()
        if tok.kind == "kw":
            if tok.text == "it":
                self.advance()
                return It()
            if tok.text == "True":
                self.advance()
                return TTrue()
            if tok.text == "False":
                self.advance()
                return TFalse()
            if tok.text in ("lam", "forall", "exists", "case"):
                return self.binder()
            raise self.fail("unexpected keyword")
        if tok.kind == "name":
            self.advance()
            return Var(tok.text)
        if tok.text == "<":
            self.advance()
            fst = self.term()
            self.expect(",")
            snd = self.term()
            self.expect(">")
            return Pair(fst, snd)
        if tok.text == "(":
            self.advance()
            t = self.term()
            self.expect(")")
            return t
        raise self.fail("expected a term")


def parse(text: str) -> Term:
    """Parse one term; raises ParseError with line/column on bad syntax."""
    parser = _Parser(tokenize(text))
    t = parser.term()
    tok = parser.peek()
    if tok.kind != "eof":
        raise parser.fail("trailing input")
    return t


# -- printing ----------------------------------------------------------

_TERM, _OR, _AND, _APP, _ATOM = range(5)


def pretty(t: Term) -> str:
    """Render a term; parse(pretty(t)) is alpha-equivalent to t."""
    return _pp(t, _TERM)


def _wrap(s: str, level: int, ctx: int) -> str:
    return f"({s})" if level < ctx else s


def _pp(t: Term, ctx: int) -> str:
    match t:
        case Var(n):
            return n
        case It():
            return "it"
        case TTrue():
            return "True"
        case TFalse():
            return "False"
        case Lam(b, body):
            return _wrap(f"lam {b}. {_pp(body, _TERM)}", _TERM, ctx)
        case App(f, a):
            return _wrap(f"{_pp(f, _APP)} {_pp(a, _ATOM)}", _APP, ctx)
        case Pair(l, r):
            return f"<{_pp(l, _TERM)}, {_pp(r, _TERM)}>"
        case Fst(p):
            return _wrap(f"fst {_pp(p, _ATOM)}", _APP, ctx)
        case Snd(p):
            return _wrap(f"snd {_pp(p, _ATOM)}", _APP, ctx)
        case Inl(p):
            return _wrap(f"inl {_pp(p, _ATOM)}", _APP, ctx)
        case Inr(p):
            return _wrap(f"inr {_pp(p, _ATOM)}", _APP, ctx)
        case Case(s, lb, lbody, rb, rbody):
            body = (
                f"case {_pp(s, _OR)} of inl {lb} -> {_pp(lbody, _TERM)}"
                f" | inr {rb} -> {_pp(rbody, _TERM)}"
            )
            return _wrap(body, _TERM, ctx)
        case Forall(d, b, f):
            if b not in free_vars(f):
                return _wrap(f"{_pp(d, _OR)} => {_pp(f, _TERM)}", _TERM, ctx)
            return _wrap(f"forall {b} : {_pp(d, _OR)} . {_pp(f, _TERM)}", _TERM, ctx)
        case Exists(d, b, f):
            if b not in free_vars(f):
                return _wrap(f"{_pp(d, _AND)} /\\ {_pp(f, _APP)}", _AND, ctx)
            return _wrap(f"exists {b} : {_pp(d, _OR)} . {_pp(f, _TERM)}", _TERM, ctx)
        case Disj(l, r):
            return _wrap(f"{_pp(l, _OR)} \\/ {_pp(r, _AND)}", _OR, ctx)
        case _:
            raise TypeError(f"not a term: {t!r}")


def describe(t: Term, limit: int = 120) -> str:
    """Short rendering for error reports."""
    s = pretty(t)
    return s if len(s) <= limit else s[: limit - 3] + "..."
