"""Polynomial expression parser and canonical printer.

Grammar (precedence low to high)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | '+' unary | power
    power  := atom ('^' INT)?
    atom   := INT | NAME | 'sqrt' '(' INT ')' | '(' expr ')'

Division is only allowed by a nonzero constant.  Implicit multiplication is
rejected.  Positions in errors are 0-based character offsets.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra.mpoly import MPoly
from .algebra.scalars import QuadField, squarefree_part, sqrt_in
from .errors import DivisionByZero, PolySyntaxError, UnknownCharacter, VariableMismatch

_NAME = re.compile(r"[a-zA-Z][a-zA-Z0-9']*")
_INT = re.compile(r"[0-9]+")


@dataclass(frozen=True)
class Token:
    kind: str  # INT, NAME, OP, END
    text: str
    pos: int


def tokenize(text: str):
    out = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        m = _INT.match(text, i)
        if m:
            out.append(Token("INT", m.group(), i))
            i = m.end()
            continue
        m = _NAME.match(text, i)
        if m:
            out.append(Token("NAME", m.group(), i))
            i = m.end()
            continue
        if ch in "+-*/^()":
            out.append(Token("OP", ch, i))
            i += 1
            continue
        raise UnknownCharacter(f"unknown character {ch!r}", i)
    out.append(Token("END", "", n))
    return out


def _sqrt_of_int(n: int):
    if n == 0:
        return Fraction(0)
    y = sqrt_in(Fraction(n), None)
    if y is not None:
        return y
    r = squarefree_part(n)
    return sqrt_in(Fraction(n), QuadField(None, r))


class _Parser:
    def __init__(self, tokens, vars):
        self.toks = tokens
        self.i = 0
        self.vars = vars

    @property
    def tok(self):
        return self.toks[self.i]

    def fail(self, msg, tok=None):
        tok = tok or self.tok
        raise PolySyntaxError(msg, tok.pos)

    def take(self, kind, text=None):
        t = self.tok
        if t.kind != kind or (text is not None and t.text != text):
            want = text or kind
            self.fail(f"expected {want!r}")
        self.i += 1
        return t

    def at(self, text):
        return self.tok.kind == "OP" and self.tok.text == text

    def parse(self):
        if self.tok.kind == "END":
            self.fail("empty expression")
        e = self.expr()
        if self.tok.kind != "END":
            self.fail(f"unexpected {self.tok.text!r}")
        return e

    def expr(self):
        acc = self.term()
        while self.at("+") or self.at("-"):
            op = self.take("OP").text
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.unary()
        while self.at("*") or self.at("/"):
            optok = self.take("OP")
            rhs = self.unary()
            if optok.text == "*":
                acc = acc * rhs
            else:
                if not rhs.is_constant():
                    self.fail("division by a non-constant", optok)
                c = rhs.constant_value()
                if c == 0:
                    raise DivisionByZero(f"division by zero at position {optok.pos}", position=optok.pos)
                acc = acc.scale(1 / c)
        return acc

    def unary(self):
        if self.at("-"):
            self.take("OP")
            return -self.unary()
        if self.at("+"):
            self.take("OP")
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.at("^"):
            self.take("OP")
            t = self.tok
            if t.kind != "INT":
                self.fail("expected an integer exponent")
            self.i += 1
            return base ** int(t.text)
        return base

    def atom(self):
        t = self.tok
        if t.kind == "INT":
            self.i += 1
            return MPoly.const(int(t.text), self.vars)
        if t.kind == "NAME":
            self.i += 1
            if t.text == "sqrt" and self.at("("):
                self.take("OP", "(")
                n = self.tok
                if n.kind != "INT":
                    self.fail("sqrt takes a nonnegative integer literal")
                self.i += 1
                self.take("OP", ")")
                return MPoly.const(_sqrt_of_int(int(n.text)), self.vars)
            if t.text not in self.vars:
                raise VariableMismatch(
                    f"variable {t.text!r} at position {t.pos} not in {self.vars}", position=t.pos
                )
            return MPoly.var(t.text, self.vars)
        if self.at("("):
            self.take("OP", "(")
            e = self.expr()
            if not self.at(")"):
                self.fail("expected ')'")
            self.take("OP", ")")
            return e
        if t.kind == "END":
            self.fail("unexpected end of input")
        self.fail(f"unexpected {t.text!r}")


def variables_in(text: str):
    """Variable names occurring in ``text``, in order of first appearance."""
    toks = tokenize(text)
    seen = []
    for k, t in enumerate(toks):
        if t.kind == "NAME" and not (t.text == "sqrt" and toks[k + 1].text == "("):
            if t.text not in seen:
                seen.append(t.text)
    return seen


def parse_poly(text: str, vars=None) -> MPoly:
    """Parse ``text`` into an exact MPoly.

    Without ``vars`` the context is the sorted list of names that occur.
    """
    if not text or not text.strip():
        raise PolySyntaxError("empty expression", 0)
    toks = tokenize(text)
    if vars is None:
        vars = tuple(sorted(variables_in(text)))
    return _Parser(toks, tuple(vars)).parse()


def print_poly(p) -> str:
    """Canonical text form (graded-lex descending, explicit ``*``)."""
    return p.to_str()
