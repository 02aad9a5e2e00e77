"""Rational expressions in x, their values, and two normalizers.

A rational expression is a term over the rational variable x, rational
literals, +, *, unary - and the (partial!) multiplicative inverse.  Its
value, when it exists, lives in the field of fractions of polynomials
(``CanonicalFraction``).  Two different syntax-to-syntax maps sit on
top of that value:

``norm_rat_expr``
    full normalization: render the reduced fraction.  Expressions whose
    value does not exist (a division by the zero polynomial somewhere)
    all map to the one distinguished term 1 * 0^-1 ("1/0").

``quasinorm_rat_expr``
    the function-preserving variant used on rational-function bodies.
    It cancels only common irreducible factors of degree >= 2 and keeps
    every linear factor that witnesses a point where the original
    expression is undefined, so the output denotes the same partial
    function on the rationals, point for point.  x/x stays x/x;
    (x^2+1)/(x^2+1) becomes 1.

The pointwise story needs care for nested inverses: 1/(1/x) flattens to
the polynomial x, yet the original is undefined at 0.  Flattening a
term bottom-up into an unreduced fraction shows that the rational
points where the term is undefined are exactly the rational roots of
the flattened numerators of inverted subterms, so quasinormalization
collects those numerators and pins each lost root a back into the
result by multiplying numerator and denominator by (x - a).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .polynomials import ONE, Poly, X, ZERO, linear_part, poly_gcd, rational_roots
from .terms import (
    FRAC,
    RAT,
    App,
    Arrow,
    Const,
    FnQQ,
    FracV,
    Lambda,
    RatLit,
    SynTerm,
    Value,
    Var,
    match_binary,
    match_unary,
    register_constant,
    register_evaluator,
)

# rational field operators
ADD_Q: Const = register_constant("+", Arrow(RAT, Arrow(RAT, RAT)))
MUL_Q: Const = register_constant("*", Arrow(RAT, Arrow(RAT, RAT)))
NEG_Q: Const = register_constant("-", Arrow(RAT, RAT))
INV_Q: Const = register_constant("inv", Arrow(RAT, RAT))

# operators of the field of fractions itself, registered so terms aimed
# straight at that type check; the artifact never builds them
register_constant("+", Arrow(FRAC, Arrow(FRAC, FRAC)))
register_constant("*", Arrow(FRAC, Arrow(FRAC, FRAC)))
register_constant("-", Arrow(FRAC, FRAC))
register_constant("inv", Arrow(FRAC, FRAC))
register_constant("X", FRAC)

X_Q = Var("x", RAT)


def q_lit(c: Fraction | int) -> SynTerm:
    return RatLit(Fraction(c))


def q_add(a: SynTerm, b: SynTerm) -> SynTerm:
    return App(App(ADD_Q, a), b)


def q_mul(a: SynTerm, b: SynTerm) -> SynTerm:
    return App(App(MUL_Q, a), b)


def q_neg(a: SynTerm) -> SynTerm:
    return App(NEG_Q, a)


def q_inv(a: SynTerm) -> SynTerm:
    return App(INV_Q, a)


def q_sub(a: SynTerm, b: SynTerm) -> SynTerm:
    """Binary subtraction is sugar: a - b == a + (-b)."""
    return q_add(a, q_neg(b))


def q_div(a: SynTerm, b: SynTerm) -> SynTerm:
    """Division is sugar: a / b == a * b^-1."""
    return q_mul(a, q_inv(b))


def q_pow(a: SynTerm, n: int) -> SynTerm:
    """Integer powers are sugar for repeated multiplication, nested to
    the right; negative powers invert, a^0 is the literal 1."""
    if n < 0:
        return q_inv(q_pow(a, -n))
    if n == 0:
        return q_lit(1)
    out = a
    for _ in range(n - 1):
        out = q_mul(a, out)
    return out


# the one undefined normal form
UNDEFINED_NORMAL_FORM: SynTerm = q_mul(q_lit(1), q_inv(q_lit(0)))


# ---------------------------------------------------------------------------
# membership


def is_rat_expr(t: SynTerm) -> bool:
    """Terms over x, rational literals, +, *, -, inv. Nothing else."""
    if isinstance(t, RatLit) or t == X_Q:
        return True
    parts = match_binary(t, ADD_Q) or match_binary(t, MUL_Q)
    if parts is not None:
        return is_rat_expr(parts[0]) and is_rat_expr(parts[1])
    arg = match_unary(t, NEG_Q)
    if arg is None:
        arg = match_unary(t, INV_Q)
    if arg is not None:
        return is_rat_expr(arg)
    return False


def is_rat_fun(t: SynTerm) -> bool:
    """Abstractions fun x -> body with a rational-expression body."""
    return (
        isinstance(t, Lambda)
        and t.var == "x"
        and t.var_ty == RAT
        and is_rat_expr(t.body)
    )


def body(t: SynTerm) -> SynTerm:
    """Body of an abstraction."""
    if not isinstance(t, Lambda):
        raise ValueError("body of a non-abstraction")
    return t.body


# ---------------------------------------------------------------------------
# values in the field of fractions


@dataclass(frozen=True)
class CanonicalFraction:
    """Reduced fraction of polynomials: gcd(num, den) = 1, den monic.

    Zero is 0/1.  Use ``make`` to build one from an arbitrary pair.
    """

    num: Poly
    den: Poly

    @classmethod
    def make(cls, num: Poly, den: Poly) -> "CanonicalFraction":
        if den.is_zero():
            raise ZeroDivisionError("fraction with zero denominator")
        if num.is_zero():
            return cls(ZERO, ONE)
        g = poly_gcd(num, den)
        num, den = num // g, den // g
        lead = den.leading
        return cls(num.scale(1 / lead), den.scale(1 / lead))

    def __post_init__(self) -> None:
        if self.den.is_zero():
            raise ZeroDivisionError("fraction with zero denominator")
        if not self.num.is_zero():
            if self.den.leading != 1:
                raise ValueError("denominator must be monic")
            if poly_gcd(self.num, self.den).degree != 0:
                raise ValueError("fraction must be reduced")
        elif self.den != ONE:
            raise ValueError("zero must be 0/1")

    def __add__(self, other: "CanonicalFraction") -> "CanonicalFraction":
        return CanonicalFraction.make(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __mul__(self, other: "CanonicalFraction") -> "CanonicalFraction":
        return CanonicalFraction.make(self.num * other.num, self.den * other.den)

    def __neg__(self) -> "CanonicalFraction":
        return CanonicalFraction(-self.num, self.den)

    def inv(self) -> Optional["CanonicalFraction"]:
        """Multiplicative inverse, None for zero."""
        if self.num.is_zero():
            return None
        return CanonicalFraction.make(self.den, self.num)


FRAC_X = CanonicalFraction(X, ONE)


def frac_value(t: SynTerm) -> Optional[CanonicalFraction]:
    """Value of a rational expression in the field of fractions, with x
    read as the indeterminate; None where the value does not exist
    (strict: an inverse of the zero fraction poisons everything above).
    """
    if isinstance(t, RatLit):
        return CanonicalFraction(Poly([t.value]), ONE)
    if t == X_Q:
        return FRAC_X
    parts = match_binary(t, ADD_Q)
    if parts is not None:
        a, b = frac_value(parts[0]), frac_value(parts[1])
        return a + b if a is not None and b is not None else None
    parts = match_binary(t, MUL_Q)
    if parts is not None:
        a, b = frac_value(parts[0]), frac_value(parts[1])
        return a * b if a is not None and b is not None else None
    arg = match_unary(t, NEG_Q)
    if arg is not None:
        a = frac_value(arg)
        return -a if a is not None else None
    arg = match_unary(t, INV_Q)
    if arg is not None:
        a = frac_value(arg)
        return a.inv() if a is not None else None
    raise ValueError("not a rational expression")


def eval_pointwise(t: SynTerm, a: Fraction | int) -> Optional[Fraction]:
    """Value of a rational expression at x = a, on the original term
    tree: every inverse of a zero value is undefined and undefinedness
    is strict.  This is the map a rational function really computes.
    """
    a = Fraction(a)

    def go(t: SynTerm) -> Optional[Fraction]:
        if isinstance(t, RatLit):
            return t.value
        if t == X_Q:
            return a
        parts = match_binary(t, ADD_Q)
        if parts is not None:
            u, v = go(parts[0]), go(parts[1])
            return u + v if u is not None and v is not None else None
        parts = match_binary(t, MUL_Q)
        if parts is not None:
            u, v = go(parts[0]), go(parts[1])
            return u * v if u is not None and v is not None else None
        arg = match_unary(t, NEG_Q)
        if arg is not None:
            u = go(arg)
            return -u if u is not None else None
        arg = match_unary(t, INV_Q)
        if arg is not None:
            u = go(arg)
            if u is None or u == 0:
                return None
            return 1 / u
        raise ValueError("not a rational expression")

    return go(t)


# ---------------------------------------------------------------------------
# rendering values back to terms


def _x_power(k: int) -> SynTerm:
    out = X_Q
    for _ in range(k - 1):
        out = q_mul(X_Q, out)
    return out


def _monomial(c: Fraction, k: int) -> SynTerm:
    # caller guarantees c > 0
    if k == 0:
        return q_lit(c)
    if c == 1:
        return _x_power(k)
    return q_mul(q_lit(c), _x_power(k))


def _poly_term(p: Poly) -> SynTerm:
    """Descending-power sum; negative coefficients ride on unary minus
    so the result survives a print/parse round trip."""
    if p.is_zero():
        return q_lit(0)
    out: SynTerm | None = None
    for k in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeff(k)
        if c == 0:
            continue
        mono = _monomial(abs(c), k)
        if out is None:
            out = q_neg(mono) if c < 0 else mono
        elif c < 0:
            out = q_add(out, q_neg(mono))
        else:
            out = q_add(out, mono)
    assert out is not None
    return out


def frac_term(num: Poly, den: Poly) -> SynTerm:
    """num * den^-1 in rendered form, a bare polynomial when den = 1."""
    if den == ONE:
        return _poly_term(num)
    return q_mul(_poly_term(num), q_inv(_poly_term(den)))


def frac_to_term(c: CanonicalFraction) -> SynTerm:
    """The canonical rendering of a fraction value as a term."""
    return frac_term(c.num, c.den)


# ---------------------------------------------------------------------------
# predicates on shapes


def is_norm(t: SynTerm) -> bool:
    """Normal forms: canonical renderings of values, plus the one
    distinguished undefined form 1/0.  A term is its own value's
    rendering exactly when rendering its value reproduces it."""
    if not is_rat_expr(t):
        return False
    if t == UNDEFINED_NORMAL_FORM:
        return True
    v = frac_value(t)
    return v is not None and frac_to_term(v) == t


def _read_fraction_shape(t: SynTerm) -> Optional[tuple[Poly, Poly]]:
    """Read p/q off a canonically rendered term without reducing; None
    when t is not exactly a rendering shape."""
    parts = match_binary(t, MUL_Q)
    if parts is not None:
        inv_arg = match_unary(parts[1], INV_Q)
        if inv_arg is not None:
            num = _read_poly(parts[0])
            den = _read_poly(inv_arg)
            if num is None or den is None:
                return None
            if frac_term(num, den) != t:
                return None
            return num, den
    num = _read_poly(t)
    if num is None or _poly_term(num) != t:
        return None
    return num, ONE


def _read_poly(t: SynTerm) -> Optional[Poly]:
    """Polynomial value of an inverse-free rational expression."""
    if not is_rat_expr(t):
        return None

    def has_inv(u: SynTerm) -> bool:
        if match_unary(u, INV_Q) is not None:
            return True
        parts = match_binary(u, ADD_Q) or match_binary(u, MUL_Q)
        if parts is not None:
            return has_inv(parts[0]) or has_inv(parts[1])
        arg = match_unary(u, NEG_Q)
        return has_inv(arg) if arg is not None else False

    if has_inv(t):
        return None
    v = frac_value(t)
    assert v is not None and v.den == ONE
    return v.num


def is_quasinorm(t: SynTerm) -> bool:
    """Quasinormal forms: rendered p/q (bare p when q = 1) whose common
    factors are all linear -- gcd(p, q) equals its own linear part -- so
    only rational singularities remain; plus the distinguished 1/0."""
    if not is_rat_expr(t):
        return False
    if t == UNDEFINED_NORMAL_FORM:
        return True
    shape = _read_fraction_shape(t)
    if shape is None:
        return False
    num, den = shape
    if den.is_zero() or den.leading != 1:
        return False
    if num.is_zero() and den == ONE:
        return True
    g = poly_gcd(num, den)
    return g == linear_part(g)


# ---------------------------------------------------------------------------
# normalization


def norm_rat_expr(t: SynTerm) -> Optional[SynTerm]:
    """Canonical rendering of the value; 1/0 when the value does not
    exist; None on terms that are not rational expressions."""
    if not is_rat_expr(t):
        return None
    v = frac_value(t)
    if v is None:
        return UNDEFINED_NORMAL_FORM
    return frac_to_term(v)


def flatten_raw(t: SynTerm) -> Optional[tuple[Poly, Poly, list[Poly]]]:
    """Unreduced fraction of a rational expression plus the flattened
    numerators of every inverted subterm; None when the value does not
    exist in the field of fractions."""
    if isinstance(t, RatLit):
        return Poly([t.value]), ONE, []
    if t == X_Q:
        return X, ONE, []
    parts = match_binary(t, ADD_Q)
    if parts is not None:
        fa, fb = flatten_raw(parts[0]), flatten_raw(parts[1])
        if fa is None or fb is None:
            return None
        (n1, d1, s1), (n2, d2, s2) = fa, fb
        return n1 * d2 + n2 * d1, d1 * d2, s1 + s2
    parts = match_binary(t, MUL_Q)
    if parts is not None:
        fa, fb = flatten_raw(parts[0]), flatten_raw(parts[1])
        if fa is None or fb is None:
            return None
        (n1, d1, s1), (n2, d2, s2) = fa, fb
        return n1 * n2, d1 * d2, s1 + s2
    arg = match_unary(t, NEG_Q)
    if arg is not None:
        fa = flatten_raw(arg)
        if fa is None:
            return None
        n, d, s = fa
        return -n, d, s
    arg = match_unary(t, INV_Q)
    if arg is not None:
        fa = flatten_raw(arg)
        if fa is None:
            return None
        n, d, s = fa
        if n.is_zero():
            return None
        return d, n, s + [n]
    raise ValueError("not a rational expression")


def singular_points(t: SynTerm) -> list[Fraction]:
    """The rational points where a rational expression is undefined,
    sorted; empty when its value does not exist (undefined everywhere,
    so there is nothing to single out)."""
    fl = flatten_raw(t)
    if fl is None:
        return []
    sings: set[Fraction] = set()
    for n in fl[2]:
        for r, _ in rational_roots(n):
            sings.add(r)
    return sorted(sings)


def quasinorm_rat_expr(t: SynTerm) -> SynTerm:
    """Quasinormalize: reduce to p/q cancelling only irreducible common
    factors of degree >= 2, then restore any rational singularity of
    the original that the flattening lost (nested inverses).  The
    result denotes the same partial function on the rationals."""
    if not is_rat_expr(t):
        raise ValueError("not a rational expression")
    fl = flatten_raw(t)
    if fl is None:
        return UNDEFINED_NORMAL_FORM
    num, den, inv_nums = fl
    g = poly_gcd(num, den)
    stripped = g // linear_part(g)
    num, den = num // stripped, den // stripped
    lead = den.leading
    num, den = num.scale(1 / lead), den.scale(1 / lead)
    sings: set[Fraction] = set()
    for n in inv_nums:
        for r, _ in rational_roots(n):
            sings.add(r)
    for a in sorted(sings):
        if den.eval_at(a) != 0:
            factor = Poly([-a, 1])
            num, den = num * factor, den * factor
    return frac_term(num, den)


def norm_rat_fun(t: SynTerm) -> Optional[SynTerm]:
    """Quasinormalize the body of a rational function; None on
    anything that is not one."""
    if not is_rat_fun(t):
        return None
    return Lambda("x", RAT, quasinorm_rat_expr(t.body))


def quasi_equal_at(f: SynTerm, g: SynTerm, a: Fraction | int) -> bool:
    """Do two rational functions agree at the point a, counting 'both
    undefined' as agreement?"""
    if not is_rat_fun(f) or not is_rat_fun(g):
        raise ValueError("quasi_equal_at compares rational functions")
    va = eval_pointwise(f.body, a)
    vb = eval_pointwise(g.body, a)
    return va == vb


# ---------------------------------------------------------------------------
# typed evaluation hooks


def _eval_frac(b: SynTerm) -> Optional[Value]:
    if not is_rat_expr(b):
        return None
    v = frac_value(b)
    return FracV(v) if v is not None else None


def _eval_fn_qq(b: SynTerm) -> Optional[Value]:
    if not is_rat_fun(b):
        return None
    return FnQQ(b)


register_evaluator(FRAC, _eval_frac)
register_evaluator(Arrow(RAT, RAT), _eval_fn_qq)
