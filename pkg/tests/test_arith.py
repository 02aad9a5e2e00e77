"""Exact arithmetic helpers: Euclidean division, gcd, powers, and the
text round-trips for integer and rational literals.
"""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from microcas.arith import (
    format_int,
    format_rat,
    int_divmod,
    int_gcd,
    int_pow,
    parse_int,
    parse_rat,
    rat_inv,
    rat_pow,
)

rationals = st.fractions(
    min_value=Fraction(-10**6), max_value=Fraction(10**6), max_denominator=10**4
)


@given(st.integers(), st.integers().filter(lambda d: d != 0))
def test_euclidean_divmod_invariant(n, d):
    q, r = int_divmod(n, d)
    assert n == q * d + r
    assert 0 <= r < abs(d)


def test_divmod_by_zero_raises():
    with pytest.raises(ZeroDivisionError):
        int_divmod(5, 0)


@given(st.integers(min_value=-(10**9), max_value=10**9), st.integers(min_value=-(10**9), max_value=10**9))
def test_gcd_divides_and_is_nonnegative(a, b):
    g = int_gcd(a, b)
    assert g >= 0
    if g:
        assert a % g == 0 and b % g == 0
    else:
        assert a == 0 and b == 0


@given(st.integers(min_value=-99, max_value=99), st.integers(min_value=0, max_value=12))
def test_int_pow_repeated_product(base, exp):
    want = 1
    for _ in range(exp):
        want *= base
    assert int_pow(base, exp) == want


def test_int_pow_rejects_negative_exponent():
    with pytest.raises(ValueError):
        int_pow(2, -1)


@given(st.integers())
def test_int_text_round_trip(n):
    assert parse_int(format_int(n)) == n


def test_parse_int_rejects_non_integers():
    for bad in ("1.5", "x", "", "1/2", "0x10"):
        with pytest.raises(ValueError):
            parse_int(bad)
    assert parse_int("  -42 ") == -42


@given(rationals)
def test_rat_text_round_trip(x):
    assert parse_rat(format_rat(x)) == x


def test_parse_rat_accepts_decimals_and_quotients():
    assert parse_rat("1.5") == Fraction(3, 2)
    assert parse_rat("-7/2") == Fraction(-7, 2)
    for bad in ("", "one", "1/0"):
        with pytest.raises(ValueError):
            parse_rat(bad)


@given(rationals.filter(lambda x: x != 0))
def test_rat_inv_is_involutive(x):
    assert rat_inv(rat_inv(x)) == x
    assert x * rat_inv(x) == 1


def test_rat_inv_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        rat_inv(Fraction(0))


@given(rationals.filter(lambda x: x != 0), st.integers(min_value=-6, max_value=6))
def test_rat_pow_group_law(x, e):
    assert rat_pow(x, e) * rat_pow(x, -e) == 1


def test_rat_pow_zero_base():
    assert rat_pow(Fraction(0), 3) == 0
    assert rat_pow(Fraction(0), 0) == 1
    with pytest.raises(ZeroDivisionError):
        rat_pow(Fraction(0), -1)
