"""Symbolic differentiation over a small real-valued language, and the
numeric machinery that keeps it honest.

The language: the real variable x, rational constants, +, *, binary and
unary -, the multiplicative inverse, powers with a rational-literal
exponent, exp, ln, sin, cos, tan.  ``diff`` rewrites a term to its
derivative term and tidies the result with ``simplify``; the rewrite is
purely syntactic and never sees a number.

``eval_real`` evaluates a term at a point with explicit partiality
(inverse of zero, ln of a nonpositive value, fractional powers outside
their domain, tangent too close to a pole, anything non-finite), and
``deriv_numeric`` estimates a derivative from central differences with
a convergence check, so the symbolic result can be audited pointwise:
that is what ``check_spec_diff`` does.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .terms import (
    REAL,
    App,
    Arrow,
    Const,
    SynTerm,
    Var,
    match_binary,
    match_unary,
    register_constant,
)

_R1 = Arrow(REAL, REAL)
_R3 = Arrow(REAL, Arrow(REAL, REAL))

ADD_R: Const = register_constant("+", _R3)
MUL_R: Const = register_constant("*", _R3)
SUB_R: Const = register_constant("-", _R3)
POW_R: Const = register_constant("^", _R3)
NEG_R: Const = register_constant("-", _R1)
INV_R: Const = register_constant("inv", _R1)
EXP_R: Const = register_constant("exp", _R1)
LN_R: Const = register_constant("ln", _R1)
SIN_R: Const = register_constant("sin", _R1)
COS_R: Const = register_constant("cos", _R1)
TAN_R: Const = register_constant("tan", _R1)

X_R = Var("x", REAL)

_FUNCTIONS = {EXP_R, LN_R, SIN_R, COS_R, TAN_R}


def r_lit(c: Fraction | int) -> SynTerm:
    """Rational constants of the real language are Const nodes whose
    symbol is the exact value's text."""
    return Const(str(Fraction(c)), REAL)


def lit_value(t: SynTerm) -> Optional[Fraction]:
    """Exact value of a rational constant of the real language, else None."""
    if isinstance(t, Const) and t.ty == REAL:
        try:
            return Fraction(t.symbol)
        except ValueError:
            return None
    return None


def _signed_lit(t: SynTerm) -> Optional[Fraction]:
    """Like lit_value, but reads through one negation, so the folding
    rules treat -(2) and a bare -2 constant alike."""
    v = lit_value(t)
    if v is not None:
        return v
    arg = match_unary(t, NEG_R)
    if arg is not None:
        v = lit_value(arg)
        if v is not None:
            return -v
    return None


def _emit_lit(c: Fraction) -> SynTerm:
    """Literal for c in the printable discipline: negative values are a
    negation wrapped around the positive literal."""
    return r_lit(c) if c >= 0 else r_neg(r_lit(-c))


def r_add(a: SynTerm, b: SynTerm) -> SynTerm:
    return App(App(ADD_R, a), b)


def r_mul(a: SynTerm, b: SynTerm) -> SynTerm:
    return App(App(MUL_R, a), b)


def r_sub(a: SynTerm, b: SynTerm) -> SynTerm:
    return App(App(SUB_R, a), b)


def r_pow(a: SynTerm, c: SynTerm) -> SynTerm:
    return App(App(POW_R, a), c)


def r_neg(a: SynTerm) -> SynTerm:
    return App(NEG_R, a)


def r_inv(a: SynTerm) -> SynTerm:
    return App(INV_R, a)


def r_div(a: SynTerm, b: SynTerm) -> SynTerm:
    """Division is sugar: a / b == a * b^-1."""
    return r_mul(a, r_inv(b))


def r_exp(a: SynTerm) -> SynTerm:
    return App(EXP_R, a)


def r_ln(a: SynTerm) -> SynTerm:
    return App(LN_R, a)


def r_sin(a: SynTerm) -> SynTerm:
    return App(SIN_R, a)


def r_cos(a: SynTerm) -> SynTerm:
    return App(COS_R, a)


def r_tan(a: SynTerm) -> SynTerm:
    return App(TAN_R, a)


# ---------------------------------------------------------------------------
# membership


def is_diff_expr(t: SynTerm) -> bool:
    """The differentiable language; power exponents must be rational
    literals, not arbitrary subterms."""
    if t == X_R or lit_value(t) is not None:
        return True
    for op in (ADD_R, MUL_R, SUB_R):
        parts = match_binary(t, op)
        if parts is not None:
            return is_diff_expr(parts[0]) and is_diff_expr(parts[1])
    parts = match_binary(t, POW_R)
    if parts is not None:
        return is_diff_expr(parts[0]) and lit_value(parts[1]) is not None
    for op in (NEG_R, INV_R, EXP_R, LN_R, SIN_R, COS_R, TAN_R):
        arg = match_unary(t, op)
        if arg is not None:
            return is_diff_expr(arg)
    return False


# ---------------------------------------------------------------------------
# the rewrite


def diff(t: SynTerm) -> Optional[SynTerm]:
    """Derivative term, simplified; None outside the language."""
    if not is_diff_expr(t):
        return None
    return simplify(_d(t))


def _d(t: SynTerm) -> SynTerm:
    if t == X_R:
        return r_lit(1)
    if lit_value(t) is not None:
        return r_lit(0)
    parts = match_binary(t, ADD_R)
    if parts is not None:
        return r_add(_d(parts[0]), _d(parts[1]))
    parts = match_binary(t, SUB_R)
    if parts is not None:
        return r_sub(_d(parts[0]), _d(parts[1]))
    parts = match_binary(t, MUL_R)
    if parts is not None:
        u, v = parts
        return r_add(r_mul(_d(u), v), r_mul(u, _d(v)))
    parts = match_binary(t, POW_R)
    if parts is not None:
        u, c_term = parts
        c = lit_value(c_term)
        assert c is not None
        if c == 0:
            return r_lit(0)
        if c == 1:
            return _d(u)
        # c * u^(c-1) * u'
        return r_mul(r_mul(_emit_lit(c), r_pow(u, r_lit(c - 1))), _d(u))
    arg = match_unary(t, NEG_R)
    if arg is not None:
        return r_neg(_d(arg))
    arg = match_unary(t, INV_R)
    if arg is not None:
        return r_neg(r_mul(_d(arg), r_pow(arg, r_lit(-2))))
    arg = match_unary(t, EXP_R)
    if arg is not None:
        return r_mul(_d(arg), r_exp(arg))
    arg = match_unary(t, LN_R)
    if arg is not None:
        return r_mul(_d(arg), r_inv(arg))
    arg = match_unary(t, SIN_R)
    if arg is not None:
        return r_mul(_d(arg), r_cos(arg))
    arg = match_unary(t, COS_R)
    if arg is not None:
        return r_neg(r_mul(_d(arg), r_sin(arg)))
    arg = match_unary(t, TAN_R)
    if arg is not None:
        return r_mul(_d(arg), r_pow(r_cos(arg), r_lit(-2)))
    raise AssertionError(f"unhandled term {t!r}")  # pragma: no cover


def simplify(t: SynTerm) -> SynTerm:
    """Clean literal artifacts out of a derivative: fold constants,
    drop +0/*1, collapse *0 and --u, unwrap ^1.  Local rules only,
    applied bottom-up to a fixpoint; where the input is defined the
    value is unchanged (dropping 0*u may enlarge the domain, never
    shrink it).  Output keeps negative constants as negations of
    positive literals, the only form the concrete syntax has for them.
    """
    if not is_diff_expr(t):
        raise ValueError("not in the differentiable language")
    while True:
        t2 = _simp(t)
        if t2 == t:
            return t
        t = t2


def _simp(t: SynTerm) -> SynTerm:
    for op, func in ((ADD_R, _simp_add), (SUB_R, _simp_sub), (MUL_R, _simp_mul)):
        parts = match_binary(t, op)
        if parts is not None:
            return func(_simp(parts[0]), _simp(parts[1]))
    parts = match_binary(t, POW_R)
    if parts is not None:
        return _simp_pow(_simp(parts[0]), parts[1])
    arg = match_unary(t, NEG_R)
    if arg is not None:
        a = _simp(arg)
        inner = match_unary(a, NEG_R)
        if inner is not None:
            return inner
        v = _signed_lit(a)
        return _emit_lit(-v) if v is not None else r_neg(a)
    arg = match_unary(t, INV_R)
    if arg is not None:
        a = _simp(arg)
        v = _signed_lit(a)
        if v is not None and v != 0:
            return _emit_lit(Fraction(1) / v)
        return r_inv(a)
    for op in _FUNCTIONS:
        arg = match_unary(t, op)
        if arg is not None:
            return App(op, _simp(arg))
    return t


def _simp_add(a: SynTerm, b: SynTerm) -> SynTerm:
    va, vb = _signed_lit(a), _signed_lit(b)
    if va is not None and vb is not None:
        return _emit_lit(va + vb)
    if va == 0:
        return b
    if vb == 0:
        return a
    return r_add(a, b)


def _simp_sub(a: SynTerm, b: SynTerm) -> SynTerm:
    va, vb = _signed_lit(a), _signed_lit(b)
    if va is not None and vb is not None:
        return _emit_lit(va - vb)
    if vb == 0:
        return a
    if va == 0:
        return r_neg(b)
    return r_sub(a, b)


def _simp_mul(a: SynTerm, b: SynTerm) -> SynTerm:
    va, vb = _signed_lit(a), _signed_lit(b)
    if va is not None and vb is not None:
        return _emit_lit(va * vb)
    if va == 0 or vb == 0:
        return r_lit(0)
    if va == 1:
        return b
    if vb == 1:
        return a
    if va == -1:
        return r_neg(b)
    if vb == -1:
        return r_neg(a)
    return r_mul(a, b)


def _simp_pow(base: SynTerm, exp_term: SynTerm) -> SynTerm:
    c = lit_value(exp_term)
    assert c is not None
    if c == 1:
        return base
    v = _signed_lit(base)
    if v is not None and c.denominator == 1 and (v != 0 or c > 0):
        return _emit_lit(v ** int(c))
    return r_pow(base, exp_term)


# ---------------------------------------------------------------------------
# pointwise real evaluation


@dataclass(frozen=True)
class RealResult:
    """A real value or nothing; defined values are always finite."""

    value: Optional[float] = None

    @property
    def is_defined(self) -> bool:
        return self.value is not None

    @classmethod
    def defined(cls, v: float) -> "RealResult":
        return cls(v) if math.isfinite(v) else cls(None)

    @classmethod
    def undefined(cls) -> "RealResult":
        return cls(None)


_TAN_POLE_EPS = 1e-12


def eval_real(t: SynTerm, a: float) -> RealResult:
    """Strict partial evaluation at x = a.

    Undefined exactly when some subterm forces it: inverse of zero, ln
    of a nonpositive number, u^(p/q) with u < 0 and q even (or u = 0
    and the exponent not positive), tan within 1e-12 of a pole, or any
    intermediate overflowing to non-finite.
    """
    if not is_diff_expr(t):
        raise ValueError("not in the differentiable language")
    return RealResult(_ev(t, float(a)))


def _finite(v: float) -> Optional[float]:
    return v if math.isfinite(v) else None


def _ev(t: SynTerm, a: float) -> Optional[float]:
    if t == X_R:
        return a
    lit = lit_value(t)
    if lit is not None:
        return _finite(float(lit))
    parts = match_binary(t, ADD_R)
    if parts is not None:
        u, v = _ev(parts[0], a), _ev(parts[1], a)
        return _finite(u + v) if u is not None and v is not None else None
    parts = match_binary(t, SUB_R)
    if parts is not None:
        u, v = _ev(parts[0], a), _ev(parts[1], a)
        return _finite(u - v) if u is not None and v is not None else None
    parts = match_binary(t, MUL_R)
    if parts is not None:
        u, v = _ev(parts[0], a), _ev(parts[1], a)
        return _finite(u * v) if u is not None and v is not None else None
    parts = match_binary(t, POW_R)
    if parts is not None:
        u = _ev(parts[0], a)
        c = lit_value(parts[1])
        if u is None or c is None:
            return None
        return _pow_real(u, c)
    arg = match_unary(t, NEG_R)
    if arg is not None:
        u = _ev(arg, a)
        return -u if u is not None else None
    arg = match_unary(t, INV_R)
    if arg is not None:
        u = _ev(arg, a)
        if u is None or u == 0.0:
            return None
        return _finite(1.0 / u)
    arg = match_unary(t, EXP_R)
    if arg is not None:
        u = _ev(arg, a)
        if u is None:
            return None
        try:
            return _finite(math.exp(u))
        except OverflowError:
            return None
    arg = match_unary(t, LN_R)
    if arg is not None:
        u = _ev(arg, a)
        if u is None or u <= 0.0:
            return None
        return _finite(math.log(u))
    arg = match_unary(t, SIN_R)
    if arg is not None:
        u = _ev(arg, a)
        return math.sin(u) if u is not None else None
    arg = match_unary(t, COS_R)
    if arg is not None:
        u = _ev(arg, a)
        return math.cos(u) if u is not None else None
    arg = match_unary(t, TAN_R)
    if arg is not None:
        u = _ev(arg, a)
        if u is None:
            return None
        c = math.cos(u)
        if abs(c) <= _TAN_POLE_EPS:
            return None
        return _finite(math.sin(u) / c)
    raise ValueError("not in the differentiable language")


def _pow_real(u: float, c: Fraction) -> Optional[float]:
    """u**c for rational c = p/q in lowest terms: defined for u > 0,
    for u = 0 when c > 0, and for u < 0 when q is odd."""
    try:
        if u > 0.0:
            return _finite(math.pow(u, float(c)))
        if u == 0.0:
            return 0.0 if c > 0 else None
        if c.denominator % 2 == 1:
            mag = math.pow(-u, float(c))
            return _finite(-mag if c.numerator % 2 else mag)
        return None
    except OverflowError:
        return None


# ---------------------------------------------------------------------------
# numeric derivative and the pointwise audit

_H_STEPS = (1e-3, 1e-4, 1e-5)
_CONVERGENCE_REL = 1e-3


def _mentions_x(t: SynTerm) -> bool:
    if isinstance(t, Var):
        return True
    if isinstance(t, App):
        return _mentions_x(t.fun) or _mentions_x(t.arg)
    return False


def deriv_numeric(t: SynTerm, a: float) -> RealResult:
    """Central-difference derivative with a convergence check.

    Quotients at h = 1e-3, 1e-4, 1e-5 must successively agree within
    relative 1e-3; the reported value is the Richardson extrapolation
    of the two finest.  Undefined whenever the term is undefined at a
    or any a +- h, or the quotients do not settle.

    Two further abstentions keep the estimate trustworthy.  Sampled
    values of size M leave about eps * M of rounding noise in each
    difference, so when that noise (amplified by the division by 2h)
    reaches the agreement threshold, the convergence test could pass on
    rounding artifacts alone and no value is claimed.  And when a term
    that mentions x produces bit-identical values across the whole
    sample window, floating-point evaluation has provably absorbed the
    contribution of x (as in x - exp(576)); the flat window says
    nothing about the real-valued derivative, so none is reported.
    """
    mid = eval_real(t, a)
    if not mid.is_defined:
        return RealResult.undefined()
    qs = []
    peak = 0.0
    flat = True
    for h in _H_STEPS:
        fp = eval_real(t, a + h)
        fm = eval_real(t, a - h)
        if not (fp.is_defined and fm.is_defined):
            return RealResult.undefined()
        peak = max(peak, abs(fp.value), abs(fm.value))
        flat = flat and fp.value == mid.value and fm.value == mid.value
        qs.append((fp.value - fm.value) / (2.0 * h))
    if flat and _mentions_x(t):
        return RealResult.undefined()

    def agree(q1: float, q2: float) -> bool:
        return abs(q1 - q2) <= _CONVERGENCE_REL * max(abs(q1), abs(q2))

    if not (agree(qs[0], qs[1]) and agree(qs[1], qs[2])):
        return RealResult.undefined()
    d = (100.0 * qs[2] - qs[1]) / 99.0
    noise = math.ulp(1.0) * peak / _H_STEPS[-1]
    if noise > _CONVERGENCE_REL * max(1.0, abs(d)):
        return RealResult.undefined()
    return RealResult.defined(d)


_ABS_TOL = 1e-4
_REL_TOL = 1e-4


@dataclass(frozen=True)
class DiffViolation:
    point: float
    expected: float
    got: Optional[float]


@dataclass
class DiffCheckReport:
    term: SynTerm
    checked: int = 0
    skipped: int = 0
    violations: list[DiffViolation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_spec_diff(t: SynTerm, points: list[float]) -> DiffCheckReport:
    """Audit diff(t) against deriv_numeric at the given points.

    Points where the numeric derivative does not exist are skipped (no
    claim is made there); where it does, the symbolic derivative must
    be defined and agree within max(1e-4, 1e-4 * |numeric|).
    """
    dt = diff(t)
    if dt is None:
        raise ValueError("not in the differentiable language")
    report = DiffCheckReport(term=t)
    for a in points:
        want = deriv_numeric(t, a)
        if not want.is_defined:
            report.skipped += 1
            continue
        report.checked += 1
        got = eval_real(dt, a)
        tol = max(_ABS_TOL, _REL_TOL * abs(want.value))
        if not got.is_defined or abs(got.value - want.value) > tol:
            report.violations.append(DiffViolation(a, want.value, got.value))
    return report


@dataclass(frozen=True)
class DomainPoint:
    point: float
    defined: bool

    @property
    def status(self) -> str:
        return "defined" if self.defined else "undefined"


@dataclass(frozen=True)
class DomainReport:
    entries: tuple[DomainPoint, ...]

    def defined_points(self) -> list[float]:
        return [e.point for e in self.entries if e.defined]

    def undefined_points(self) -> list[float]:
        return [e.point for e in self.entries if not e.defined]


def domain_sample(t: SynTerm, lo: float, hi: float, n: int) -> DomainReport:
    """Evaluate on n evenly spaced points of [lo, hi], inclusive.

    The grid is lo + (hi-lo)*i/(n-1), which lands exactly on integer
    grid points, so singularities at integers are actually hit.
    """
    if n < 2:
        raise ValueError("need at least two sample points")
    if not lo < hi:
        raise ValueError("need lo < hi")
    entries = []
    for i in range(n):
        a = lo + (hi - lo) * i / (n - 1)
        entries.append(DomainPoint(a, eval_real(t, a).is_defined))
    return DomainReport(tuple(entries))
