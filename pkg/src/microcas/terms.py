"""Syntax trees, semantic types, and the quote/eval bridge between them.

The kernel keeps two worlds strictly apart.  Terms (``SynTerm``) are
plain immutable trees: they are compared structurally, they carry no
values, and nothing stops you from building an ill-typed one such as
``App(Var("x", RAT), Var("x", RAT))``.  Values (``Value``) live on the
host side: integers, exact rationals, reduced fractions of polynomials,
rational functions, and terms-as-data.

``quote`` wraps a term so it can be handled as data of type SYNTAX.
``eval_as`` goes the other way: given a quotation and a target type it
returns the value the quoted term stands for, or None when the term
does not have that type or the value does not exist.  Evaluation is a
host-level operation; there is no evaluation node in the term language,
so every term is trivially evaluation-free.

Constant signatures and the evaluators for the richer types are
registered by the modules that own them (factoring registers the
integer operators, rational the field of fractions, differentiation the
real operators); importing the package top-level wires everything up.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Union

# ---------------------------------------------------------------------------
# semantic types


@dataclass(frozen=True)
class BaseType:
    name: str

    def __str__(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Arrow:
    dom: "SemType"
    cod: "SemType"

    def __str__(self) -> str:
        return f"({self.dom} -> {self.cod})"

    __repr__ = __str__


SemType = Union[BaseType, Arrow]

INT = BaseType("int")  # integers
RAT = BaseType("rat")  # exact rationals
FRAC = BaseType("frac")  # field of fractions of polynomials over the rationals
REAL = BaseType("real")  # reals (evaluated pointwise, never as a Value)
BOOL = BaseType("bool")  # truth values (predicates stay host-level)
SYNTAX = BaseType("syntax")  # terms as data


def type_name(ty: SemType) -> str:
    return str(ty)


# ---------------------------------------------------------------------------
# terms


@dataclass(frozen=True)
class IntLit:
    value: int


@dataclass(frozen=True)
class RatLit:
    value: Fraction

    def __post_init__(self) -> None:
        if not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True)
class Var:
    name: str
    ty: SemType

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("variable name must be nonempty")


@dataclass(frozen=True)
class Const:
    symbol: str
    ty: SemType


@dataclass(frozen=True)
class App:
    fun: "SynTerm"
    arg: "SynTerm"


@dataclass(frozen=True)
class Lambda:
    var: str
    var_ty: SemType
    body: "SynTerm"


@dataclass(frozen=True)
class Quote:
    term: "SynTerm"


SynTerm = Union[IntLit, RatLit, Var, Const, App, Lambda, Quote]

# ---------------------------------------------------------------------------
# values


@dataclass(frozen=True)
class IntV:
    value: int


@dataclass(frozen=True)
class RatV:
    value: Fraction


@dataclass(frozen=True)
class FracV:
    value: "CanonicalFraction"  # noqa: F821  (defined in microcas.rational)


@dataclass(frozen=True)
class FnQQ:
    """A rational function, carried as the Lambda term that denotes it."""

    term: SynTerm

    def __call__(self, a: Fraction) -> Optional[Fraction]:
        from .rational import eval_pointwise

        return eval_pointwise(self.term.body, a)


@dataclass(frozen=True)
class TermV:
    term: SynTerm


Value = Union[IntV, RatV, FracV, FnQQ, TermV]

# ---------------------------------------------------------------------------
# constant signature and evaluator registry

_CONSTANTS: set[tuple[str, SemType]] = set()
_EVALUATORS: dict[SemType, Callable[[SynTerm], Optional[Value]]] = {}


def register_constant(symbol: str, ty: SemType) -> Const:
    """Register a constant and return its node. Idempotent."""
    _CONSTANTS.add((symbol, ty))
    return Const(symbol, ty)


def constant_registered(symbol: str, ty: SemType) -> bool:
    return (symbol, ty) in _CONSTANTS


def register_evaluator(ty: SemType, fn: Callable[[SynTerm], Optional[Value]]) -> None:
    """Install the evaluator used by eval_as for terms aimed at ``ty``.

    The evaluator receives the quoted term (already unwrapped) and is
    responsible for its own membership gate; it returns None for
    undefined.
    """
    _EVALUATORS[ty] = fn


# ---------------------------------------------------------------------------
# quotation and typing


def quote(t: SynTerm) -> Quote:
    """Wrap a term as data.  Injective by construction; terms contain no
    evaluation nodes, so the operand is always evaluation-free."""
    return Quote(t)


def infer_type(t: SynTerm) -> Optional[SemType]:
    """The unique type of ``t`` under the registered signature, or None.

    Variables carry their own types (two variables with the same name
    but different types are simply different variables), so no
    environment is needed and open terms type fine.
    """
    if isinstance(t, IntLit):
        return INT
    if isinstance(t, RatLit):
        return RAT
    if isinstance(t, Var):
        return t.ty
    if isinstance(t, Const):
        return t.ty if (t.symbol, t.ty) in _CONSTANTS else None
    if isinstance(t, Quote):
        return SYNTAX
    if isinstance(t, Lambda):
        bt = infer_type(t.body)
        return Arrow(t.var_ty, bt) if bt is not None else None
    if isinstance(t, App):
        ft = infer_type(t.fun)
        at = infer_type(t.arg)
        if isinstance(ft, Arrow) and at is not None and ft.dom == at:
            return ft.cod
        return None
    raise TypeError(f"not a term: {t!r}")


def is_expr_of(t: SynTerm, ty: SemType) -> bool:
    """True iff ``t`` is a well-typed expression of type ``ty``."""
    return infer_type(t) == ty


# ---------------------------------------------------------------------------
# structural helpers shared by every module that walks terms


def match_unary(t: SynTerm, op: Const) -> Optional[SynTerm]:
    """The operand of ``op`` if t == App(op, u), else None."""
    if isinstance(t, App) and t.fun == op:
        return t.arg
    return None


def match_binary(t: SynTerm, op: Const) -> Optional[tuple[SynTerm, SynTerm]]:
    """The operands if t == App(App(op, a), b), else None."""
    if isinstance(t, App) and isinstance(t.fun, App) and t.fun.fun == op:
        return t.fun.arg, t.arg
    return None


# ---------------------------------------------------------------------------
# evaluation

_I3 = Arrow(INT, Arrow(INT, INT))
_I1 = Arrow(INT, INT)
_Q3 = Arrow(RAT, Arrow(RAT, RAT))
_Q1 = Arrow(RAT, RAT)


def _fold_int(t: SynTerm) -> Optional[int]:
    """Value of a closed integer term; None where no value exists."""
    if isinstance(t, IntLit):
        return t.value
    if isinstance(t, App):
        if isinstance(t.fun, App) and isinstance(t.fun.fun, Const):
            c = t.fun.fun
            if c.ty == _I3:
                a = _fold_int(t.fun.arg)
                b = _fold_int(t.arg)
                if a is None or b is None:
                    return None
                if c.symbol == "+":
                    return a + b
                if c.symbol == "*":
                    return a * b
                if c.symbol == "^":
                    return a**b if b >= 0 else None
        if isinstance(t.fun, Const) and t.fun.ty == _I1 and t.fun.symbol == "-":
            a = _fold_int(t.arg)
            return -a if a is not None else None
    return None


def _fold_rat(t: SynTerm) -> Optional[Fraction]:
    """Value of a closed rational term; inverse of zero is undefined."""
    if isinstance(t, RatLit):
        return t.value
    if isinstance(t, App):
        if isinstance(t.fun, App) and isinstance(t.fun.fun, Const):
            c = t.fun.fun
            if c.ty == _Q3:
                a = _fold_rat(t.fun.arg)
                b = _fold_rat(t.arg)
                if a is None or b is None:
                    return None
                if c.symbol == "+":
                    return a + b
                if c.symbol == "*":
                    return a * b
        if isinstance(t.fun, Const) and t.fun.ty == _Q1:
            a = _fold_rat(t.arg)
            if a is None:
                return None
            if t.fun.symbol == "-":
                return -a
            if t.fun.symbol == "inv":
                return 1 / a if a != 0 else None
    return None


def eval_as(t: SynTerm, ty: SemType) -> Optional[Value]:
    """Value of the term quoted inside ``t``, read at type ``ty``.

    ``t`` must be a quotation (anything else is a caller error, not an
    undefined result).  Returns None when the quoted term is not an
    expression of the requested type, or when it has no value there
    (free variables, inverse of zero, ...).  For FRAC and RAT->RAT the
    registered evaluators accept rational-expression syntax, where the
    variable x is read as the indeterminate rather than a free variable.
    """
    if not isinstance(t, Quote):
        raise ValueError("eval_as needs a quotation")
    b = t.term
    if ty == INT:
        if infer_type(b) != INT:
            return None
        v = _fold_int(b)
        return IntV(v) if v is not None else None
    if ty == RAT:
        if infer_type(b) != RAT:
            return None
        v = _fold_rat(b)
        return RatV(v) if v is not None else None
    if ty == SYNTAX:
        if isinstance(b, Quote):
            return TermV(b.term)
        return None
    fn = _EVALUATORS.get(ty)
    if fn is not None:
        return fn(b)
    return None
