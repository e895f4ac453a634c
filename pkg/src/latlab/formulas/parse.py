"""Recursive-descent parser for the formula DSL.

Grammar (ASCII):

    term    := atom_t | term '^' term | term 'v' term        ^ binds tighter
    atom_t  := ident | '0' | '1' | '(' term ')'
    atom    := term '=' term | term '<=' term
    formula := '!' formula | formula '&' formula | formula '|' formula
             | formula '->' formula | 'A' ident '.' formula
             | 'E' ident '.' formula | '(' formula ')' | atom

Precedence: ! > & > | > ->, with -> right-associative and quantifier scope
extending maximally to the right.  'A', 'E' and 'v' are reserved words.
"""

from __future__ import annotations

import re

from ..errors import FormulaSyntaxError
from . import ast

_TOKEN = re.compile(r"\s*(<=|->|[()=^&|!.]|[A-Za-z_][A-Za-z0-9_]*|[0-9]+)")

RESERVED = {"A", "E", "v"}


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise FormulaSyntaxError(f"unexpected character {stripped[0]!r}", at)
        out.append((m.group(1), m.start(1)))
        pos = m.end()
    out.append((None, len(text)))  # end marker
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i][0]

    def pos(self):
        return self.tokens[self.i][1]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, tok):
        got, at = self.take()
        if got != tok:
            raise FormulaSyntaxError(f"expected {tok!r}, found {got!r}", at)

    # terms: join < meet < primary

    def term(self):
        t = self.meet_term()
        while self.peek() == "v":
            self.take()
            t = ast.Join(t, self.meet_term())
        return t

    def meet_term(self):
        t = self.primary_term()
        while self.peek() == "^":
            self.take()
            t = ast.Meet(t, self.primary_term())
        return t

    def primary_term(self):
        tok, at = self.take()
        if tok == "(":
            t = self.term()
            self.expect(")")
            return t
        if tok == "0":
            return ast.Const(0)
        if tok == "1":
            return ast.Const(1)
        if tok is not None and re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", tok):
            if tok in RESERVED:
                raise FormulaSyntaxError(f"{tok!r} is a reserved word", at)
            return ast.Var(tok)
        raise FormulaSyntaxError(f"expected a term, found {tok!r}", at)

    # formulas: -> < | < & < ! < atom

    def formula(self):
        return self.implies()

    def implies(self):
        left = self.or_f()
        if self.peek() == "->":
            self.take()
            return ast.Implies(left, self.implies())
        return left

    def or_f(self):
        f = self.and_f()
        while self.peek() == "|":
            self.take()
            f = ast.Or(f, self.and_f())
        return f

    def and_f(self):
        f = self.unary()
        while self.peek() == "&":
            self.take()
            f = ast.And(f, self.unary())
        return f

    def unary(self):
        tok = self.peek()
        if tok == "!":
            self.take()
            return ast.Not(self.unary())
        if tok in ("A", "E"):
            _, at = self.take()
            name, nat = self.take()
            if name is None or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name) \
                    or name in RESERVED or name in ("0", "1"):
                raise FormulaSyntaxError(f"expected a variable after quantifier, found {name!r}", nat)
            self.expect(".")
            body = self.formula()  # maximal scope
            return (ast.Forall if tok == "A" else ast.Exists)(name, body)
        return self.atom_or_group()

    def atom_or_group(self):
        # '(' is ambiguous between a grouped formula and a parenthesized term;
        # try the formula reading first and fall back to an atom.  When both
        # readings fail, report whichever error got further into the input.
        formula_error = None
        if self.peek() == "(":
            save = self.i
            self.take()
            try:
                f = self.formula()
                self.expect(")")
                return f
            except FormulaSyntaxError as exc:
                formula_error = exc
                self.i = save
        try:
            left = self.term()
            tok, at = self.take()
            if tok == "=":
                return ast.Eq(left, self.term())
            if tok == "<=":
                return ast.Le(left, self.term())
            raise FormulaSyntaxError(f"expected '=' or '<=', found {tok!r}", at)
        except FormulaSyntaxError as exc:
            if formula_error is not None and formula_error.position > exc.position:
                raise formula_error
            raise


def parse(text: str):
    """Parse a DSL string into a checked formula AST."""
    p = _Parser(text)
    f = p.formula()
    tok, at = p.tokens[p.i]
    if tok is not None:
        raise FormulaSyntaxError(f"trailing input starting with {tok!r}", at)
    return ast.check_well_formed(f)
