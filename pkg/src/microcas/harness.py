"""Seeded random term generators and executable contract suites.

Each check_* function runs one operation's formal contract over a
batch of generated terms, one tally per contract branch, and returns a
Report.  The defined branches are cross-checked against oracles that
do not share code with the implementation under test: factoring is
re-multiplied through the quotation kernel, normalization is compared
by cross-multiplying the unreduced flattened fractions, derivatives
against central differences.  A report only counts as ok when every
branch was actually exercised, so a generator drifting away from an
undefinedness path fails loudly instead of silently.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .terms import (
    Arrow,
    App,
    FnQQ,
    FracV,
    INT,
    IntLit,
    IntV,
    Lambda,
    Quote,
    RAT,
    FRAC,
    REAL,
    RatLit,
    RatV,
    SYNTAX,
    SynTerm,
    TermV,
    Var,
    eval_as,
    match_binary,
    match_unary,
    quote,
)
from . import factoring as fx
from . import rational as rq
from . import differentiation as dr
from .printing import to_sexpr


@dataclass(frozen=True)
class GenConfig:
    """Knobs for generation and check sizes; same seed, same run."""

    seed: int
    max_depth: int = 6
    coeff_bound: int = 12
    cases: int = 500

    def __post_init__(self) -> None:
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")
        if self.max_depth < 1:
            raise ValueError("max_depth must be at least 1")
        if self.cases < 1:
            raise ValueError("cases must be at least 1")
        if self.coeff_bound < 1:
            raise ValueError("coeff_bound must be at least 1")


def _off_language_cases(cfg: GenConfig) -> int:
    return max(1, 2 * cfg.cases // 5)


# ---------------------------------------------------------------------------
# generators


def draw_numeral(rng: random.Random, cfg: GenConfig) -> SynTerm:
    roll = rng.random()
    if roll < 0.3:
        return IntLit(rng.randint(0, 50))
    if roll < 0.8:
        return IntLit(rng.randint(0, cfg.coeff_bound ** 4))
    return IntLit(rng.randint(0, 10 ** 6))


def _rat_literal(rng: random.Random, cfg: GenConfig) -> SynTerm:
    num = rng.randint(0, cfg.coeff_bound)
    den = rng.randint(1, 4) if rng.random() < 0.3 else 1
    lit = rq.q_lit(Fraction(num, den))
    return rq.q_neg(lit) if rng.random() < 0.35 else lit


def _linear_root_product(rng: random.Random, cfg: GenConfig) -> SynTerm:
    """One or two factors x - r with small integer roots, the kind of
    denominator whose undefined points the normalizer must preserve."""
    half = max(1, cfg.coeff_bound // 2)
    out: Optional[SynTerm] = None
    for _ in range(rng.randint(1, 2)):
        r = rng.randint(-half, half)
        if r >= 0:
            f = rq.q_sub(rq.X_Q, rq.q_lit(r))
        else:
            f = rq.q_add(rq.X_Q, rq.q_lit(-r))
        out = f if out is None else rq.q_mul(out, f)
    return out


def _denominator(rng: random.Random, cfg: GenConfig, depth: int) -> SynTerm:
    if rng.random() < 0.3:
        return _linear_root_product(rng, cfg)
    return _rat_expr(rng, cfg, min(depth, 3))


def _rat_expr(rng: random.Random, cfg: GenConfig, depth: int) -> SynTerm:
    if depth <= 1 or rng.random() < 0.25:
        return rq.X_Q if rng.random() < 0.45 else _rat_literal(rng, cfg)
    roll = rng.random()
    if roll < 0.22:
        return rq.q_add(_rat_expr(rng, cfg, depth - 1), _rat_expr(rng, cfg, depth - 1))
    if roll < 0.38:
        return rq.q_sub(_rat_expr(rng, cfg, depth - 1), _rat_expr(rng, cfg, depth - 1))
    if roll < 0.60:
        return rq.q_mul(_rat_expr(rng, cfg, depth - 1), _rat_expr(rng, cfg, depth - 1))
    if roll < 0.72:
        return rq.q_div(_rat_expr(rng, cfg, depth - 1), _denominator(rng, cfg, depth - 1))
    if roll < 0.80:
        return rq.q_neg(_rat_expr(rng, cfg, depth - 1))
    if roll < 0.90:
        return rq.q_inv(_denominator(rng, cfg, depth - 1))
    return rq.q_pow(_rat_expr(rng, cfg, min(depth - 1, 2)), rng.choice((2, 2, 3)))


def draw_rat_expr(rng: random.Random, cfg: GenConfig) -> SynTerm:
    return _rat_expr(rng, cfg, cfg.max_depth)


def draw_rat_fun(rng: random.Random, cfg: GenConfig) -> SynTerm:
    return Lambda("x", RAT, draw_rat_expr(rng, cfg))


def _diff_literal(rng: random.Random, cfg: GenConfig) -> SynTerm:
    num = rng.randint(0, cfg.coeff_bound)
    den = rng.randint(1, 4) if rng.random() < 0.25 else 1
    lit = dr.r_lit(Fraction(num, den))
    return dr.r_neg(lit) if rng.random() < 0.3 else lit


def _diff_expr(rng: random.Random, cfg: GenConfig, depth: int) -> SynTerm:
    if depth <= 1 or rng.random() < 0.28:
        return dr.X_R if rng.random() < 0.5 else _diff_literal(rng, cfg)
    roll = rng.random()
    sub = lambda d=1: _diff_expr(rng, cfg, depth - d)  # noqa: E731
    if roll < 0.15:
        return dr.r_add(sub(), sub())
    if roll < 0.30:
        return dr.r_sub(sub(), sub())
    if roll < 0.48:
        return dr.r_mul(sub(), sub())
    if roll < 0.56:
        return dr.r_div(sub(), _diff_expr(rng, cfg, min(depth - 1, 3)))
    if roll < 0.62:
        return dr.r_neg(sub())
    if roll < 0.68:
        return dr.r_inv(_diff_expr(rng, cfg, min(depth - 1, 3)))
    if roll < 0.78:
        e = rng.choice((-3, -2, -1, 2, 2, 3, 3, 4))
        return dr.r_pow(_diff_expr(rng, cfg, min(depth - 1, 3)), dr.r_lit(e))
    if roll < 0.84:
        return dr.r_sin(sub())
    if roll < 0.90:
        return dr.r_cos(sub())
    if roll < 0.93:
        return dr.r_tan(sub())
    if roll < 0.97:
        return dr.r_exp(sub())
    return dr.r_ln(sub())


def draw_diff_expr(rng: random.Random, cfg: GenConfig) -> SynTerm:
    return _diff_expr(rng, cfg, cfg.max_depth)


def draw_int_expr(rng: random.Random, cfg: GenConfig, depth: int | None = None) -> SynTerm:
    """Closed integer terms for the quotation law: literals combined
    with addition, multiplication, negation, small nonnegative powers."""
    if depth is None:
        depth = cfg.max_depth
    if depth <= 0 or rng.random() < 0.4:
        return IntLit(rng.randint(0, cfg.coeff_bound))
    roll = rng.random()
    if roll < 0.35:
        return fx.i_add(draw_int_expr(rng, cfg, depth - 1), draw_int_expr(rng, cfg, depth - 1))
    if roll < 0.70:
        return fx.i_mul(draw_int_expr(rng, cfg, depth - 1), draw_int_expr(rng, cfg, depth - 1))
    if roll < 0.85:
        return fx.i_neg(draw_int_expr(rng, cfg, depth - 1))
    return fx.i_pow(draw_int_expr(rng, cfg, depth - 1), IntLit(rng.randint(0, 3)))


def draw_closed_rat(rng: random.Random, cfg: GenConfig, depth: int | None = None) -> SynTerm:
    """Closed rational-literal terms; inverses of zero arise on purpose."""
    if depth is None:
        depth = cfg.max_depth
    if depth <= 0 or rng.random() < 0.4:
        return _rat_literal(rng, cfg)
    roll = rng.random()
    if roll < 0.30:
        return rq.q_add(draw_closed_rat(rng, cfg, depth - 1), draw_closed_rat(rng, cfg, depth - 1))
    if roll < 0.60:
        return rq.q_mul(draw_closed_rat(rng, cfg, depth - 1), draw_closed_rat(rng, cfg, depth - 1))
    if roll < 0.80:
        return rq.q_neg(draw_closed_rat(rng, cfg, depth - 1))
    return rq.q_inv(draw_closed_rat(rng, cfg, depth - 1))


def draw_non_member(rng: random.Random, target: str) -> SynTerm:
    """A term outside the named language, for the undefined branches."""
    if target == "numeral":
        pool: tuple[SynTerm, ...] = (
            IntLit(-rng.randint(1, 99)),
            RatLit(Fraction(1, 2)),
            rq.X_Q,
            fx.i_neg(IntLit(rng.randint(0, 9))),
            fx.i_add(IntLit(1), IntLit(2)),
            Quote(IntLit(3)),
            dr.X_R,
        )
    elif target == "ratexpr":
        pool = (
            IntLit(7),
            dr.r_sin(dr.X_R),
            dr.r_add(dr.X_R, dr.r_lit(1)),
            Var("x", REAL),
            Lambda("x", RAT, rq.X_Q),
            Quote(rq.X_Q),
            App(rq.X_Q, rq.X_Q),
        )
    elif target == "ratfun":
        pool = (
            rq.X_Q,
            rq.q_lit(rng.randint(0, 9)),
            Lambda("y", RAT, rq.q_lit(1)),
            Lambda("x", REAL, dr.X_R),
            Lambda("x", RAT, dr.X_R),
            IntLit(2),
            Quote(Lambda("x", RAT, rq.X_Q)),
        )
    elif target == "diffexpr":
        pool = (
            rq.X_Q,
            rq.q_add(rq.X_Q, rq.q_lit(1)),
            IntLit(3),
            RatLit(Fraction(1, 2)),
            Lambda("x", REAL, dr.X_R),
            Quote(dr.X_R),
            dr.r_pow(dr.X_R, dr.X_R),
        )
    else:
        raise ValueError(f"unknown target language {target!r}")
    return pool[rng.randrange(len(pool))]


# seed-deterministic single-term entry points


def gen_numeral(cfg: GenConfig) -> SynTerm:
    return draw_numeral(random.Random(cfg.seed), cfg)


def gen_rat_expr(cfg: GenConfig) -> SynTerm:
    return draw_rat_expr(random.Random(cfg.seed), cfg)


def gen_rat_fun(cfg: GenConfig) -> SynTerm:
    return draw_rat_fun(random.Random(cfg.seed), cfg)


def gen_diff_expr(cfg: GenConfig) -> SynTerm:
    return draw_diff_expr(random.Random(cfg.seed), cfg)


# ---------------------------------------------------------------------------
# reports


@dataclass
class BranchTally:
    """Pass/fail counts for one branch of a contract."""

    name: str
    cases: int = 0
    failures: int = 0
    first_counterexample: Optional[str] = None

    def record(self, ok: bool, witness: Callable[[], str]) -> None:
        self.cases += 1
        if not ok:
            self.failures += 1
            if self.first_counterexample is None:
                self.first_counterexample = witness()


@dataclass
class Report:
    check: str
    seed: int
    branches: list[BranchTally] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        """No failures, and every branch actually exercised."""
        return all(b.failures == 0 and b.cases > 0 for b in self.branches)

    def render(self) -> str:
        head = "PASS" if self.ok else "FAIL"
        lines = [f"{self.check}: {head}  (seed={self.seed})"]
        for b in self.branches:
            lines.append(f"  {b.name:<28} {b.cases} checked, {b.failures} failed")
            if b.first_counterexample is not None:
                lines.append(f"    first counterexample: {b.first_counterexample}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "seed": self.seed,
            "ok": self.ok,
            "branches": [
                {
                    "name": b.name,
                    "cases": b.cases,
                    "failures": b.failures,
                    "first_counterexample": b.first_counterexample,
                }
                for b in self.branches
            ],
        }


# ---------------------------------------------------------------------------
# contract checks


def check_spec_factor(cfg: GenConfig) -> Report:
    """Factoring contract: on numerals the result is a prime
    decomposition denoting the same integer; off numerals there is no
    result."""
    rng = random.Random(cfg.seed)
    shape = BranchTally("prime-decomposition-shape")
    value = BranchTally("value-agreement")
    undef = BranchTally("undefined-off-language")
    for _ in range(cfg.cases):
        t = draw_numeral(rng, cfg)
        d = fx.factor(t)
        shape.record(
            d is not None and fx.is_prime_decomp(d),
            lambda: to_sexpr(t),
        )
        agreed = False
        if d is not None:
            got = eval_as(quote(d), INT)
            agreed = isinstance(got, IntV) and got.value == t.value
        value.record(agreed, lambda: to_sexpr(t))
    for _ in range(_off_language_cases(cfg)):
        s = draw_non_member(rng, "numeral")
        undef.record(fx.factor(s) is None, lambda: to_sexpr(s))
    return Report("factor", cfg.seed, [shape, value, undef])


def _values_cross_match(t: SynTerm, n: SynTerm) -> bool:
    """Quasi-equality of two rational expressions' field values through
    the unreduced route: same definedness, and numerator/denominator
    cross products equal when defined."""
    ft = rq.flatten_raw(t)
    fn = rq.flatten_raw(n)
    if (ft is None) != (fn is None):
        return False
    if ft is None:
        return True
    return ft[0] * fn[1] == fn[0] * ft[1]


def check_spec_norm_rat_expr(cfg: GenConfig) -> Report:
    """Normalization contract: outputs are normal forms with the same
    field value (quasi-equality); no result off the language."""
    rng = random.Random(cfg.seed)
    normal = BranchTally("normal-on-output")
    value = BranchTally("value-quasi-equality")
    undef = BranchTally("undefined-off-language")
    for _ in range(cfg.cases):
        t = draw_rat_expr(rng, cfg)
        n = rq.norm_rat_expr(t)
        normal.record(n is not None and rq.is_norm(n), lambda: to_sexpr(t))
        value.record(
            n is not None and _values_cross_match(t, n),
            lambda: to_sexpr(t),
        )
    for _ in range(_off_language_cases(cfg)):
        s = draw_non_member(rng, "ratexpr")
        undef.record(rq.norm_rat_expr(s) is None, lambda: to_sexpr(s))
    return Report("norm-rat-expr", cfg.seed, [normal, value, undef])


def _sample_points(
    rng: random.Random, body: SynTerm, extra: int
) -> list[Fraction]:
    points = set(rq.singular_points(body))
    for _ in range(extra):
        points.add(Fraction(rng.randint(-60, 60), rng.randint(1, 6)))
    return sorted(points)


def check_spec_norm_rat_fun(cfg: GenConfig) -> Report:
    """Function-normalization contract: outputs are rational functions
    in quasinormal form computing the same partial function, checked at
    every rational singularity of the input plus random points."""
    rng = random.Random(cfg.seed)
    shape = BranchTally("output-is-function")
    quasi = BranchTally("body-quasinormal")
    pointwise = BranchTally("pointwise-quasi-equality")
    undef = BranchTally("undefined-off-language")
    for _ in range(cfg.cases):
        f = draw_rat_fun(rng, cfg)
        g = rq.norm_rat_fun(f)
        shape.record(g is not None and rq.is_rat_fun(g), lambda: to_sexpr(f))
        quasi.record(
            g is not None and rq.is_quasinorm(rq.body(g)),
            lambda: to_sexpr(f),
        )
        agreed = True
        bad_point: Optional[Fraction] = None
        if g is None:
            agreed = False
        else:
            for a in _sample_points(rng, f.body, 50):
                if not rq.quasi_equal_at(f, g, a):
                    agreed = False
                    bad_point = a
                    break
        pointwise.record(
            agreed, lambda: f"{to_sexpr(f)} at x = {bad_point}"
        )
    for _ in range(_off_language_cases(cfg)):
        s = draw_non_member(rng, "ratfun")
        undef.record(rq.norm_rat_fun(s) is None, lambda: to_sexpr(s))
    return Report("norm-rat-fun", cfg.seed, [shape, quasi, pointwise, undef])


_DIFF_GRID = [-2.5 + 5.0 * i / 24 for i in range(25)]


def check_spec_diff(cfg: GenConfig) -> Report:
    """Differentiation contract: the derivative stays in the language
    and matches the convergent central-difference estimate wherever
    that estimate exists; no result off the language."""
    rng = random.Random(cfg.seed)
    closure = BranchTally("derivative-in-language")
    pointwise = BranchTally("pointwise-agreement")
    undef = BranchTally("undefined-off-language")
    for _ in range(cfg.cases):
        t = draw_diff_expr(rng, cfg)
        dt = dr.diff(t)
        closure.record(
            dt is not None and dr.is_diff_expr(dt), lambda: to_sexpr(t)
        )
        rep = dr.check_spec_diff(t, _DIFF_GRID)
        pointwise.record(
            rep.ok,
            lambda: (
                f"{to_sexpr(t)} at x = {rep.violations[0].point}"
                if rep.violations
                else to_sexpr(t)
            ),
        )
    for _ in range(_off_language_cases(cfg)):
        s = draw_non_member(rng, "diffexpr")
        undef.record(dr.diff(s) is None, lambda: to_sexpr(s))
    return Report("diff", cfg.seed, [closure, pointwise, undef])


def _int_denote(t: SynTerm) -> Optional[int]:
    """Independent meaning of a closed integer term."""
    if isinstance(t, IntLit):
        return t.value
    parts = match_binary(t, fx.ADD_I)
    if parts is not None:
        a, b = _int_denote(parts[0]), _int_denote(parts[1])
        return a + b if a is not None and b is not None else None
    parts = match_binary(t, fx.MUL_I)
    if parts is not None:
        a, b = _int_denote(parts[0]), _int_denote(parts[1])
        return a * b if a is not None and b is not None else None
    parts = match_binary(t, fx.POW_I)
    if parts is not None:
        a, b = _int_denote(parts[0]), _int_denote(parts[1])
        if a is None or b is None or b < 0:
            return None
        return a ** b
    arg = match_unary(t, fx.NEG_I)
    if arg is not None:
        a = _int_denote(arg)
        return -a if a is not None else None
    return None


def _rat_denote(t: SynTerm) -> Optional[Fraction]:
    """Independent meaning of a closed rational term; inverses of zero
    have none."""
    if isinstance(t, RatLit):
        return t.value
    parts = match_binary(t, rq.ADD_Q)
    if parts is not None:
        a, b = _rat_denote(parts[0]), _rat_denote(parts[1])
        return a + b if a is not None and b is not None else None
    parts = match_binary(t, rq.MUL_Q)
    if parts is not None:
        a, b = _rat_denote(parts[0]), _rat_denote(parts[1])
        return a * b if a is not None and b is not None else None
    arg = match_unary(t, rq.NEG_Q)
    if arg is not None:
        a = _rat_denote(arg)
        return -a if a is not None else None
    arg = match_unary(t, rq.INV_Q)
    if arg is not None:
        a = _rat_denote(arg)
        if a is None or a == 0:
            return None
        return 1 / a
    return None


def check_disquotation(cfg: GenConfig) -> Report:
    """Quotation law: evaluating the quotation of a term at its own
    type yields the term's denotation; at any other type, nothing."""
    rng = random.Random(cfg.seed)
    ints = BranchTally("integer-denotation")
    rats = BranchTally("rational-denotation")
    fracs = BranchTally("fraction-denotation")
    funs = BranchTally("function-denotation")
    syntax = BranchTally("syntax-identity")
    mismatch = BranchTally("type-mismatch-undefined")

    for _ in range(cfg.cases):
        t = draw_int_expr(rng, cfg)
        want = _int_denote(t)
        got = eval_as(quote(t), INT)
        ints.record(
            want is not None
            and isinstance(got, IntV)
            and got.value == want,
            lambda: to_sexpr(t),
        )

    for _ in range(cfg.cases):
        t = draw_closed_rat(rng, cfg)
        want = _rat_denote(t)
        got = eval_as(quote(t), RAT)
        if want is None:
            ok = got is None
        else:
            ok = isinstance(got, RatV) and got.value == want
        rats.record(ok, lambda: to_sexpr(t))

    for _ in range(cfg.cases):
        t = draw_rat_expr(rng, cfg)
        want = rq.frac_value(t)
        got = eval_as(quote(t), FRAC)
        if want is None:
            ok = got is None
        else:
            ok = isinstance(got, FracV) and got.value == want
        fracs.record(ok, lambda: to_sexpr(t))

    qq = Arrow(RAT, RAT)
    for _ in range(cfg.cases):
        f = draw_rat_fun(rng, cfg)
        got = eval_as(quote(f), qq)
        ok = isinstance(got, FnQQ) and got.term == f
        if ok:
            for a in (Fraction(0), Fraction(1), Fraction(-2), Fraction(1, 3)):
                if got(a) != rq.eval_pointwise(f.body, a):
                    ok = False
                    break
        funs.record(ok, lambda: to_sexpr(f))

    for _ in range(cfg.cases):
        t = draw_rat_expr(rng, cfg)
        got = eval_as(quote(quote(t)), SYNTAX)
        syntax.record(
            isinstance(got, TermV) and got.term == t, lambda: to_sexpr(t)
        )

    for _ in range(max(1, cfg.cases // 5)):
        t, ty = _mismatched_pair(rng, cfg)
        mismatch.record(
            eval_as(quote(t), ty) is None,
            lambda: f"{to_sexpr(t)} read at {ty}",
        )

    return Report(
        "disquotation",
        cfg.seed,
        [ints, rats, fracs, funs, syntax, mismatch],
    )


def _mentions_var(t: SynTerm) -> bool:
    if isinstance(t, Var):
        return True
    if isinstance(t, App):
        return _mentions_var(t.fun) or _mentions_var(t.arg)
    return False


def _mismatched_pair(rng: random.Random, cfg: GenConfig):
    roll = rng.randrange(6)
    if roll == 0:
        t = draw_rat_expr(rng, cfg)
        while not _mentions_var(t):
            t = draw_rat_expr(rng, cfg)
        return t, RAT  # open term: no rational value
    if roll == 1:
        return draw_numeral(rng, cfg), RAT
    if roll == 2:
        return draw_closed_rat(rng, cfg), INT
    if roll == 3:
        return draw_diff_expr(rng, cfg), FRAC
    if roll == 4:
        return draw_numeral(rng, cfg), Arrow(RAT, RAT)
    return draw_diff_expr(rng, cfg), REAL


CHECKS: dict[str, Callable[[GenConfig], Report]] = {
    "factor": check_spec_factor,
    "norm-expr": check_spec_norm_rat_expr,
    "norm-fun": check_spec_norm_rat_fun,
    "diff": check_spec_diff,
    "disquote": check_disquotation,
}


def check_all(cfg: GenConfig) -> list[Report]:
    """Every contract suite under one config."""
    return [fn(cfg) for fn in CHECKS.values()]
