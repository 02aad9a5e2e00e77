"""Integer factoring: decomposition terms, the Maple-style listing, and
the numeral gate, all checked against an independent trial-division
oracle defined below (written before the implementation was consulted).
"""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from microcas.factoring import (
    PrimeFactorization,
    decomp_to_term,
    divisors,
    factor,
    factor_int,
    is_numeral,
    is_prime_decomp,
    is_probable_prime,
    remult,
    to_maple_list,
)
from microcas.terms import INT, IntLit, IntV, RatLit, Var, eval_as, quote


def trial_division_oracle(n: int) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Reference factorization by pure trial division.

    Returns (sign, ((p, e), ...)) with primes strictly increasing.
    Deliberately naive and slow so it shares no code with the library.
    """
    if n == 0:
        return 0, ()
    sign = 1 if n > 0 else -1
    n = abs(n)
    out: list[tuple[int, int]] = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return sign, tuple(out)


def test_oracle_sanity():
    assert trial_division_oracle(0) == (0, ())
    assert trial_division_oracle(1) == (1, ())
    assert trial_division_oracle(-1) == (-1, ())
    assert trial_division_oracle(12) == (1, ((2, 2), (3, 1)))
    assert trial_division_oracle(-97) == (-1, ((97, 1),))
    assert trial_division_oracle(2**10) == (1, ((2, 10),))


@given(st.integers(min_value=-(10**6), max_value=10**6))
@settings(max_examples=300)
def test_factor_int_matches_oracle(n):
    pf = factor_int(n)
    assert (pf.sign, pf.factors) == trial_division_oracle(n)


@given(st.integers(min_value=-(10**9), max_value=10**9))
@settings(max_examples=200)
def test_remult_inverts_factor_int(n):
    assert remult(factor_int(n)) == n


def test_factor_int_structure_is_sorted_primes():
    rng = random.Random(5)
    for _ in range(200):
        n = rng.randint(2, 10**7)
        pf = factor_int(n)
        primes = [p for p, _ in pf.factors]
        assert primes == sorted(primes)
        assert len(set(primes)) == len(primes)
        for p, e in pf.factors:
            assert e >= 1
            assert trial_division_oracle(p) == (1, ((p, 1),))


def test_factor_int_large_semiprime_and_prime_power():
    # 2^64 - 1 = 3 * 5 * 17 * 257 * 641 * 65537 * 6700417
    pf = factor_int(2**64 - 1)
    assert pf.sign == 1
    assert pf.factors == (
        (3, 1),
        (5, 1),
        (17, 1),
        (257, 1),
        (641, 1),
        (65537, 1),
        (6700417, 1),
    )
    big = 1_000_003  # prime just above the trial-division bound's comfort zone
    pf2 = factor_int(big * big)
    assert pf2.factors == ((big, 2),)


def test_is_probable_prime_agrees_with_sieve():
    limit = 2000
    sieve = [True] * limit
    sieve[0] = sieve[1] = False
    for i in range(2, limit):
        if sieve[i]:
            for j in range(i * i, limit, i):
                sieve[j] = False
    for n in range(limit):
        assert is_probable_prime(n) == sieve[n], n


def test_divisors_of_perfect_number():
    assert divisors(28) == [1, 2, 4, 7, 14, 28]
    assert divisors(1) == [1]
    assert sum(divisors(28)) == 2 * 28


def test_maple_listing_exact_strings():
    assert to_maple_list(factor_int(12)) == "[1, [[2, 2], [3, 1]]]"
    assert to_maple_list(factor_int(-360)) == "[-1, [[2, 3], [3, 2], [5, 1]]]"
    assert to_maple_list(factor_int(1)) == "[1, []]"
    assert to_maple_list(factor_int(97)) == "[1, [[97, 1]]]"
    with pytest.raises(ValueError):
        to_maple_list(factor_int(0))


def test_decomp_term_shape_and_value():
    rng = random.Random(11)
    for _ in range(150):
        n = rng.randint(0, 10**6)
        t = decomp_to_term(factor_int(n))
        assert is_prime_decomp(t)
        assert eval_as(quote(t), INT) == IntV(n)


def test_is_prime_decomp_rejects_wrong_shapes():
    from microcas.factoring import i_mul, i_neg, i_pow

    # Special literals are decompositions; other bare literals are not.
    assert is_prime_decomp(IntLit(0))
    assert is_prime_decomp(IntLit(1))
    assert is_prime_decomp(i_neg(IntLit(1)))
    assert not is_prime_decomp(IntLit(6))
    assert not is_prime_decomp(IntLit(2))

    good = decomp_to_term(factor_int(12))
    assert is_prime_decomp(good)
    # Non-increasing primes, composite bases, zero exponents all fail.
    assert not is_prime_decomp(
        i_mul(IntLit(1), i_mul(i_pow(IntLit(3), IntLit(1)), i_pow(IntLit(2), IntLit(1))))
    )
    assert not is_prime_decomp(
        i_mul(IntLit(1), i_pow(IntLit(4), IntLit(1)))
    )
    assert not is_prime_decomp(
        i_mul(IntLit(1), i_pow(IntLit(2), IntLit(0)))
    )


def test_is_numeral_gate():
    assert is_numeral(IntLit(0))
    assert is_numeral(IntLit(41))
    from microcas.factoring import i_neg

    assert not is_numeral(i_neg(IntLit(3)))
    assert not is_numeral(RatLit(3))
    assert not is_numeral(Var("x", INT))


def test_factor_is_undefined_off_numerals():
    from fractions import Fraction

    from microcas.factoring import i_add

    assert factor(IntLit(12)) is not None
    assert factor(RatLit(Fraction(1, 2))) is None
    assert factor(i_add(IntLit(1), IntLit(2))) is None
    assert factor(Var("n", INT)) is None


def test_factor_output_contract_on_numerals():
    rng = random.Random(23)
    for _ in range(100):
        t = IntLit(rng.randint(0, 10**5))
        d = factor(t)
        assert d is not None
        assert is_prime_decomp(d)
        assert eval_as(quote(d), INT) == eval_as(quote(t), INT)


def test_prime_factorization_value_object():
    pf = PrimeFactorization(1, ((2, 2), (3, 1)))
    assert remult(pf) == 12
    assert remult(PrimeFactorization(0, ())) == 0
    assert remult(PrimeFactorization(-1, ((5, 1),))) == -5
