"""Concrete syntax for the four term languages.

One grammar serves all of them; the requested language decides which
leaves and operators the parsed tree may use and how the sugar comes
apart:

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' exponent)?
    atom   := number | 'x' | ident '(' expr ')' | '(' expr ')'

* "int": integer literals with +, *, ^ and negation.  Binary '-' is
  sugar for adding a negation; '/' has no meaning and is rejected.
* "ratexpr": rational expressions in x.  '-' as above, '/' is sugar
  for multiplying with an inverse, '^' for repeated multiplication.
  A quotient of two literals folds to one rational literal, except
  over a zero denominator, so "3/2" is a number and "1/0" is not.
* "ratfun": `fun x -> E` with E a ratexpr, parsed to an abstraction.
* "diffexpr": the real language.  Binary '-' and '^' are operators in
  their own right (the exponent must be a rational constant), and the
  usual function names apply: sin, cos, tan, exp, ln.

"inv(u)" is accepted as a function atom in ratexpr and diffexpr so
every inverse node has a concrete spelling; exponents may carry a
minus sign, and in diffexpr a parenthesized fraction: x^-2, x^(1/2).

Syntax problems raise ParseError with line and column.  Text that
parses but steps outside the requested language (sin in a ratexpr,
division of integers) raises PredicateViolation, a ParseError subtype.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .terms import App, IntLit, Lambda, RAT, RatLit, SynTerm
from . import factoring as fx
from . import rational as rq
from . import differentiation as dr

LANGS = ("int", "ratexpr", "ratfun", "diffexpr")


class ParseError(ValueError):
    """Bad syntax, with the offending position."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


class PredicateViolation(ParseError):
    """Well-formed text whose tree falls outside the requested language."""


@dataclass(frozen=True)
class _Token:
    kind: str  # "num", "ident", "op", "eof"
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<num>\d+(?:\.\d+)?)
      | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
      | (?P<arrow>->)
      | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


def _tokenize(src: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            raise ParseError(f"stray character {src[pos]!r}", line, col)
        text = m.group(0)
        if m.lastgroup == "num":
            tokens.append(_Token("num", text, line, col))
        elif m.lastgroup == "ident":
            tokens.append(_Token("ident", text, line, col))
        elif m.lastgroup in ("op", "arrow"):
            tokens.append(_Token("op", text, line, col))
        newlines = text.count("\n")
        if newlines:
            line += newlines
            col = len(text) - text.rfind("\n")
        else:
            col += len(text)
        pos = m.end()
    tokens.append(_Token("eof", "", line, col))
    return tokens


_DIFF_FUNS = {
    "sin": dr.SIN_R,
    "cos": dr.COS_R,
    "tan": dr.TAN_R,
    "exp": dr.EXP_R,
    "ln": dr.LN_R,
    "inv": dr.INV_R,
}


class _Parser:
    def __init__(self, tokens: list[_Token], lang: str):
        self.tokens = tokens
        self.lang = lang
        self.i = 0

    # -- token plumbing ----------------------------------------------

    @property
    def cur(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        tok = self.cur
        self.i += 1
        return tok

    def accept(self, text: str) -> Optional[_Token]:
        if self.cur.kind == "op" and self.cur.text == text:
            return self.advance()
        return None

    def expect(self, text: str) -> _Token:
        tok = self.accept(text)
        if tok is None:
            raise ParseError(f"expected {text!r}", self.cur.line, self.cur.col)
        return tok

    def fail(self, message: str, tok: Optional[_Token] = None) -> ParseError:
        tok = tok or self.cur
        return ParseError(message, tok.line, tok.col)

    def violation(self, message: str, tok: _Token) -> PredicateViolation:
        return PredicateViolation(message, tok.line, tok.col)

    # -- grammar -----------------------------------------------------

    def parse_expr(self) -> SynTerm:
        left = self.parse_term()
        while True:
            tok = self.accept("+") or self.accept("-")
            if tok is None:
                return left
            right = self.parse_term()
            if tok.text == "+":
                left = self.make_add(left, right)
            else:
                left = self.make_sub(left, right)

    def parse_term(self) -> SynTerm:
        left = self.parse_unary()
        while True:
            tok = self.accept("*") or self.accept("/")
            if tok is None:
                return left
            right = self.parse_unary()
            if tok.text == "*":
                left = self.make_mul(left, right)
            else:
                left = self.make_div(left, right, tok)

    def parse_unary(self) -> SynTerm:
        tok = self.accept("-")
        if tok is not None:
            return self.make_neg(self.parse_unary())
        return self.parse_power()

    def parse_power(self) -> SynTerm:
        base = self.parse_atom()
        tok = self.accept("^")
        if tok is None:
            return base
        return self.make_pow(base, self.parse_exponent(), tok)

    def parse_exponent(self) -> Fraction:
        """A signed integer, or (diffexpr only) a parenthesized signed
        fraction: 3, -2, (1/2), (-3/2)."""
        if self.cur.kind == "op" and self.cur.text == "(":
            if self.lang != "diffexpr":
                raise self.fail("exponent must be an integer")
            self.advance()
            value = self.signed_number(allow_fraction=True)
            self.expect(")")
            return value
        return self.signed_number(allow_fraction=False)

    def signed_number(self, allow_fraction: bool) -> Fraction:
        sign = -1 if self.accept("-") else 1
        tok = self.advance()
        if tok.kind != "num" or "." in tok.text:
            raise self.fail("expected an integer", tok)
        value = Fraction(int(tok.text))
        if allow_fraction and self.accept("/"):
            den_tok = self.advance()
            if den_tok.kind != "num" or "." in den_tok.text:
                raise self.fail("expected an integer denominator", den_tok)
            den = int(den_tok.text)
            if den == 0:
                raise self.fail("zero denominator in exponent", den_tok)
            value /= den
        return sign * value

    def parse_atom(self) -> SynTerm:
        tok = self.advance()
        if tok.kind == "num":
            return self.make_number(tok)
        if tok.kind == "ident":
            if tok.text == "x":
                return self.make_var(tok)
            return self.parse_call(tok)
        if tok.kind == "op" and tok.text == "(":
            inner = self.parse_expr()
            self.expect(")")
            return inner
        raise self.fail("expected a number, name, or '('", tok)

    def parse_call(self, name: _Token) -> SynTerm:
        self.expect("(")
        arg = self.parse_expr()
        self.expect(")")
        if self.lang == "diffexpr":
            op = _DIFF_FUNS.get(name.text)
            if op is None:
                raise self.fail(f"unknown function {name.text!r}", name)
            return App(op, arg)
        if self.lang in ("ratexpr", "ratfun"):
            if name.text == "inv":
                return rq.q_inv(arg)
            if name.text in _DIFF_FUNS:
                raise self.violation(
                    f"{name.text} is not part of the rational-expression language",
                    name,
                )
            raise self.fail(f"unknown function {name.text!r}", name)
        raise self.violation(
            f"{name.text} is not part of the integer language", name
        )

    # -- language-directed construction ------------------------------

    def make_number(self, tok: _Token) -> SynTerm:
        value = Fraction(tok.text)
        if self.lang == "int":
            if value.denominator != 1:
                raise self.violation("integer literal expected", tok)
            return IntLit(int(value))
        if self.lang == "diffexpr":
            return dr.r_lit(value)
        return rq.q_lit(value)

    def make_var(self, tok: _Token) -> SynTerm:
        if self.lang == "int":
            raise self.violation("the integer language has no variable", tok)
        if self.lang == "diffexpr":
            return dr.X_R
        return rq.X_Q

    def make_add(self, a: SynTerm, b: SynTerm) -> SynTerm:
        if self.lang == "int":
            return fx.i_add(a, b)
        if self.lang == "diffexpr":
            return dr.r_add(a, b)
        return rq.q_add(a, b)

    def make_sub(self, a: SynTerm, b: SynTerm) -> SynTerm:
        if self.lang == "int":
            return fx.i_add(a, fx.i_neg(b))
        if self.lang == "diffexpr":
            return dr.r_sub(a, b)
        return rq.q_sub(a, b)

    def make_mul(self, a: SynTerm, b: SynTerm) -> SynTerm:
        if self.lang == "int":
            return fx.i_mul(a, b)
        if self.lang == "diffexpr":
            return dr.r_mul(a, b)
        return rq.q_mul(a, b)

    def make_div(self, a: SynTerm, b: SynTerm, tok: _Token) -> SynTerm:
        if self.lang == "int":
            raise self.violation(
                "the integer language has no division", tok
            )
        if self.lang == "diffexpr":
            fold = self.fold_literal_quotient(a, b)
            return fold if fold is not None else dr.r_div(a, b)
        fold = self.fold_literal_quotient(a, b)
        return fold if fold is not None else rq.q_div(a, b)

    def fold_literal_quotient(self, a: SynTerm, b: SynTerm) -> Optional[SynTerm]:
        """Two literals under '/' denote one rational number, provided
        the denominator is not zero; "1/0" stays a real division."""
        if self.lang == "diffexpr":
            va, vb = dr.lit_value(a), dr.lit_value(b)
            if va is not None and vb is not None and vb != 0:
                return dr.r_lit(va / vb)
            return None
        if isinstance(a, RatLit) and isinstance(b, RatLit) and b.value != 0:
            return rq.q_lit(a.value / b.value)
        return None

    def make_neg(self, a: SynTerm) -> SynTerm:
        if self.lang == "int":
            return fx.i_neg(a)
        if self.lang == "diffexpr":
            return dr.r_neg(a)
        return rq.q_neg(a)

    def make_pow(self, base: SynTerm, exponent: Fraction, tok: _Token) -> SynTerm:
        if self.lang == "diffexpr":
            return dr.r_pow(base, dr.r_lit(exponent))
        assert exponent.denominator == 1
        if self.lang == "int":
            return fx.i_pow(base, IntLit(int(exponent)))
        return rq.q_pow(base, int(exponent))


def parse(src: str, lang: str) -> SynTerm:
    """Parse src as a term of the named language.

    lang is one of "int", "ratexpr", "ratfun", "diffexpr".  The result
    always satisfies the corresponding membership predicate.
    """
    if lang not in LANGS:
        raise ValueError(f"unknown language {lang!r}")
    tokens = _tokenize(src)
    p = _Parser(tokens, "ratexpr" if lang == "ratfun" else lang)

    if lang == "ratfun":
        head = p.advance()
        if head.kind != "ident" or head.text != "fun":
            raise ParseError("a function starts with 'fun'", head.line, head.col)
        var = p.advance()
        if var.kind != "ident" or var.text != "x":
            raise ParseError("the bound variable must be x", var.line, var.col)
        if p.advance().text != "->":
            raise ParseError("expected '->'", var.line, var.col + len(var.text))
        term: SynTerm = Lambda("x", RAT, p.parse_expr())
    else:
        term = p.parse_expr()

    end = p.cur
    if end.kind != "eof":
        raise ParseError(f"unexpected {end.text!r}", end.line, end.col)
    return term
