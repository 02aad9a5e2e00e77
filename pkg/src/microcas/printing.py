"""Pretty-printers: infix (parse-exact), s-expression, and JSON.

The infix printer inverts the parser: for any term the parser can
produce, parse(to_infix(t), lang) is structurally equal to t.  It
leans on the types the operator constants carry, so no language
argument is needed.  The conventions that make the inversion exact:

* rational-language power chains a*(a*...*a) print as a^n, and an
  inverse prints as a^-n, matching how the parser expands '^';
* a * inv(b) prints as a / b, except when both sides are literals of
  nonzero value: there "a / b" would re-fold into one literal, so the
  inverse is spelled out;
* real-language subtraction is its own operator, so a sum whose right
  side is a negation prints "a + -b" (the rational and integer
  languages print "a - b", which is how their parser spells that tree);
* real-language inverses print as inv(u), because "u^-1" already means
  a power node there.

Negative literal leaves (IntLit(-5) and friends) have no spelling of
their own; they print with a minus sign and re-parse as a negation
applied to the positive literal.  Canonical constructors and the
generators never produce them.

to_sexpr and to_json are total on syntax trees and keep every node;
both are stable serializations intended for tooling, not reparsing.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional

from .terms import (
    RAT,
    REAL,
    App,
    Const,
    IntLit,
    Lambda,
    Quote,
    RatLit,
    SynTerm,
    Var,
    match_binary,
    match_unary,
    type_name,
)
from . import factoring as fx
from . import rational as rq
from . import differentiation as dr

_ATOM = 5
_POWER = 4
_UNARY = 3
_TERM = 2
_EXPR = 1

_FUN_NAMES = {
    dr.EXP_R: "exp",
    dr.LN_R: "ln",
    dr.SIN_R: "sin",
    dr.COS_R: "cos",
    dr.TAN_R: "tan",
}


def to_infix(t: SynTerm) -> str:
    """Concrete syntax for t; the parser maps it back to t exactly.

    Raises ValueError on trees with no infix form (quotations, bare
    operator constants, abstractions below the top level).
    """
    if isinstance(t, Lambda):
        if t.var != "x":
            raise ValueError("only functions of x have an infix form")
        body, _ = _render(t.body)
        return f"fun {t.var} -> {body}"
    text, _ = _render(t)
    return text


def _render(t: SynTerm) -> tuple[str, int]:
    """Text plus the precedence level the text parses at."""
    if isinstance(t, IntLit):
        return _render_numeric(Fraction(t.value))
    if isinstance(t, RatLit):
        return _render_numeric(t.value)
    if isinstance(t, Var):
        # Only the distinguished variable of the two expression languages
        # has a concrete spelling the parser will read back.
        if t.name == "x" and t.ty in (RAT, REAL):
            return t.name, _ATOM
        raise ValueError(f"no infix form for the variable {t.name!r}")
    if isinstance(t, Const):
        v = dr.lit_value(t)
        if v is not None:
            return _render_numeric(v)
        raise ValueError(f"no infix form for a bare operator {t.symbol!r}")
    if isinstance(t, (Lambda, Quote)):
        raise ValueError("no infix form inside an expression")
    return _render_app(t)


def _render_numeric(v: Fraction) -> tuple[str, int]:
    if v.denominator == 1:
        return str(v), _ATOM if v >= 0 else _UNARY
    return str(v), _TERM


def _at(t: SynTerm, level: int) -> str:
    text, have = _render(t)
    return f"({text})" if have < level else text


def _render_app(t: SynTerm) -> tuple[str, int]:
    for add_op, neg_op in ((fx.ADD_I, fx.NEG_I), (rq.ADD_Q, rq.NEG_Q)):
        parts = match_binary(t, add_op)
        if parts is not None:
            a, b = parts
            sub = match_unary(b, neg_op)
            if sub is not None:
                return f"{_at(a, _EXPR)} - {_at(sub, _TERM)}", _EXPR
            return f"{_at(a, _EXPR)} + {_at(b, _TERM)}", _EXPR

    parts = match_binary(t, dr.ADD_R)
    if parts is not None:
        return f"{_at(parts[0], _EXPR)} + {_at(parts[1], _TERM)}", _EXPR
    parts = match_binary(t, dr.SUB_R)
    if parts is not None:
        return f"{_at(parts[0], _EXPR)} - {_at(parts[1], _TERM)}", _EXPR

    parts = match_binary(t, rq.MUL_Q)
    if parts is not None:
        chain = _as_power_chain(t)
        if chain is not None:
            base, n = chain
            return f"{_at(base, _ATOM)}^{n}", _POWER
        return _render_product(t, parts, rq.INV_Q)
    parts = match_binary(t, fx.MUL_I)
    if parts is not None:
        return _render_product(t, parts, None)
    parts = match_binary(t, dr.MUL_R)
    if parts is not None:
        return _render_product(t, parts, dr.INV_R)

    parts = match_binary(t, fx.POW_I)
    if parts is not None:
        return _render_power(parts[0], parts[1])
    parts = match_binary(t, dr.POW_R)
    if parts is not None:
        return _render_power(parts[0], parts[1])

    for neg_op in (fx.NEG_I, rq.NEG_Q, dr.NEG_R):
        arg = match_unary(t, neg_op)
        if arg is not None:
            return f"-{_at(arg, _UNARY)}", _UNARY

    arg = match_unary(t, rq.INV_Q)
    if arg is not None:
        chain = _as_power_chain(arg)
        base, n = chain if chain is not None else (arg, 1)
        return f"{_at(base, _ATOM)}^-{n}", _POWER

    arg = match_unary(t, dr.INV_R)
    if arg is not None:
        return f"inv({to_infix(arg)})", _ATOM

    for op, name in _FUN_NAMES.items():
        arg = match_unary(t, op)
        if arg is not None:
            return f"{name}({to_infix(arg)})", _ATOM

    raise ValueError(f"no infix form for {t!r}")


def _is_literal(t: SynTerm) -> bool:
    return (
        isinstance(t, (IntLit, RatLit))
        or dr.lit_value(t) is not None
    )


def _literal_value(t: SynTerm) -> Optional[Fraction]:
    if isinstance(t, IntLit):
        return Fraction(t.value)
    if isinstance(t, RatLit):
        return t.value
    return dr.lit_value(t)


def _render_product(
    t: SynTerm, parts: tuple[SynTerm, SynTerm], inv_op: Optional[Const]
) -> tuple[str, int]:
    a, b = parts
    if inv_op is not None:
        den = match_unary(b, inv_op)
        if den is not None:
            dv = _literal_value(den)
            folds = _is_literal(a) and dv is not None and dv != 0
            if not folds:
                return f"{_at(a, _TERM)} / {_at(den, _UNARY)}", _TERM
    return f"{_at(a, _TERM)} * {_at(b, _UNARY)}", _TERM


def _render_power(base: SynTerm, exponent: SynTerm) -> tuple[str, int]:
    c = _literal_value(exponent)
    if c is None:
        raise ValueError("no infix form for a power with a compound exponent")
    if c.denominator == 1:
        return f"{_at(base, _ATOM)}^{c}", _POWER
    return f"{_at(base, _ATOM)}^({c})", _POWER


def _as_power_chain(t: SynTerm) -> Optional[tuple[SynTerm, int]]:
    """Read t as base*(base*(...*base)) with at least two factors,
    the shape integer powers expand to in the rational language."""
    parts = match_binary(t, rq.MUL_Q)
    if parts is None:
        return None
    base, rest = parts
    n = 1
    while True:
        inner = match_binary(rest, rq.MUL_Q)
        if inner is None:
            return (base, n + 1) if rest == base else None
        if inner[0] != base:
            return None
        rest = inner[1]
        n += 1


# ---------------------------------------------------------------------------
# structural formats


def to_sexpr(t: SynTerm) -> str:
    """Fully parenthesized prefix form, one node per parenthesis pair."""
    if isinstance(t, IntLit):
        return f"(int {t.value})"
    if isinstance(t, RatLit):
        return f"(rat {t.value})"
    if isinstance(t, Var):
        return f"(var {t.name} {type_name(t.ty)})"
    if isinstance(t, Const):
        return f"(const {t.symbol} {type_name(t.ty)})"
    if isinstance(t, App):
        return f"(app {to_sexpr(t.fun)} {to_sexpr(t.arg)})"
    if isinstance(t, Lambda):
        return f"(lam {t.var} {type_name(t.var_ty)} {to_sexpr(t.body)})"
    if isinstance(t, Quote):
        return f"(quote {to_sexpr(t.term)})"
    raise ValueError(f"not a syntax tree: {t!r}")


def _json_obj(t: SynTerm) -> dict:
    if isinstance(t, IntLit):
        return {"node": "int", "value": str(t.value)}
    if isinstance(t, RatLit):
        return {"node": "rat", "value": str(t.value)}
    if isinstance(t, Var):
        return {"node": "var", "name": t.name, "type": type_name(t.ty)}
    if isinstance(t, Const):
        return {"node": "const", "symbol": t.symbol, "type": type_name(t.ty)}
    if isinstance(t, App):
        return {"node": "app", "fun": _json_obj(t.fun), "arg": _json_obj(t.arg)}
    if isinstance(t, Lambda):
        return {
            "node": "lam",
            "var": t.var,
            "var_type": type_name(t.var_ty),
            "body": _json_obj(t.body),
        }
    if isinstance(t, Quote):
        return {"node": "quote", "term": _json_obj(t.term)}
    raise ValueError(f"not a syntax tree: {t!r}")


def to_json(t: SynTerm) -> str:
    """One-line JSON with node kinds and literal values as strings."""
    return json.dumps(_json_obj(t), sort_keys=True)


FORMATS = ("infix", "sexpr", "json")


def format_term(t: SynTerm, fmt: str) -> str:
    if fmt == "infix":
        return to_infix(t)
    if fmt == "sexpr":
        return to_sexpr(t)
    if fmt == "json":
        return to_json(t)
    raise ValueError(f"unknown format {fmt!r}")
