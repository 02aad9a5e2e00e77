"""Dense univariate polynomials over the exact rationals: ring laws,
Euclidean division, monic gcd, rational roots, and the product of
linear factors used by quasinormalization.
"""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from microcas.polynomials import Poly, linear_part, poly_gcd, rational_roots

NEG_INF = float("-inf")

coeffs = st.lists(
    st.fractions(min_value=Fraction(-9), max_value=Fraction(9), max_denominator=6),
    max_size=6,
)
polys = coeffs.map(Poly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


def test_constructor_strips_trailing_zero_coefficients():
    assert Poly([1, 2, 0, 0]).coeffs == (Fraction(1), Fraction(2))
    assert Poly([0, 0]).coeffs == ()
    assert Poly([]).is_zero()
    assert Poly([0]).degree == NEG_INF


def test_basic_accessors():
    p = Poly([Fraction(1, 2), 0, 3])
    assert p.degree == 2
    assert p.leading == 3
    assert p.coeff(0) == Fraction(1, 2)
    assert p.coeff(1) == 0
    assert p.coeff(99) == 0
    with pytest.raises(ValueError):
        Poly().leading


@given(polys, polys, polys)
def test_ring_laws(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert p * (q + r) == p * q + p * r
    assert p + Poly() == p
    assert p * Poly([1]) == p
    assert p + (-p) == Poly()


@given(polys, nonzero_polys)
def test_euclidean_division_round_trip(a, b):
    q, r = divmod(a, b)
    assert a == q * b + r
    assert r.is_zero() or r.degree < b.degree


def test_division_by_zero_raises():
    with pytest.raises(ZeroDivisionError):
        divmod(Poly([1]), Poly())


@given(polys, polys)
@settings(max_examples=60)
def test_gcd_is_monic_common_divisor(p, q):
    if p.is_zero() and q.is_zero():
        with pytest.raises(ValueError):
            poly_gcd(p, q)
        return
    g = poly_gcd(p, q)
    assert g.leading == 1
    assert (p % g).is_zero() and (q % g).is_zero()


@given(polys, nonzero_polys)
@settings(max_examples=60)
def test_gcd_detects_planted_common_factor(p, d):
    if p.is_zero():
        return
    g = poly_gcd(p * d, Poly([0, 1]) * d)
    assert (g % d.monic()).is_zero()


def test_rational_roots_on_constructed_product():
    # (x - 1)^2 (x + 3/2) (x^2 + 1): rational roots 1 (twice) and -3/2.
    p = (
        Poly([-1, 1])
        * Poly([-1, 1])
        * Poly([Fraction(3, 2), 1])
        * Poly([1, 0, 1])
    )
    assert rational_roots(p) == [(Fraction(-3, 2), 1), (Fraction(1), 2)]


def test_rational_roots_none_for_irreducible():
    assert rational_roots(Poly([1, 0, 1])) == []
    assert rational_roots(Poly([2, 0, 0, 1])) == []  # x^3 + 2


def test_rational_roots_respects_multiplicity_and_scaling():
    p = (Poly([0, 1]) ** 3 * Poly([-2, 1])).scale(Fraction(7, 3))
    roots = dict(rational_roots(p))
    assert roots == {Fraction(0): 3, Fraction(2): 1}


def test_rational_roots_of_zero_poly_raises():
    with pytest.raises(ValueError):
        rational_roots(Poly())


@given(st.lists(st.fractions(min_value=Fraction(-5), max_value=Fraction(5), max_denominator=4), min_size=1, max_size=4))
@settings(max_examples=60)
def test_rational_roots_recovers_planted_linear_factors(rs):
    p = Poly([1])
    for r in rs:
        p = p * Poly([-r, 1])
    found = rational_roots(p)
    want: dict[Fraction, int] = {}
    for r in rs:
        want[r] = want.get(r, 0) + 1
    assert dict(found) == want
    assert [r for r, _ in found] == sorted(want)


def test_linear_part_splits_off_rational_root_factors():
    p = Poly([-1, 1]) * Poly([1, 1]) * Poly([1, 0, 1])
    lp = linear_part(p)
    assert lp == Poly([-1, 1]) * Poly([1, 1])
    q, r = divmod(p, lp)
    assert r.is_zero()
    assert rational_roots(q) == []


def test_linear_part_of_rootless_poly_is_one():
    assert linear_part(Poly([1, 0, 1])) == Poly([1])
    assert linear_part(Poly([5])) == Poly([1])


@given(polys)
@settings(max_examples=60)
def test_derivative_is_linear_and_drops_degree(p):
    q = p.derivative()
    if p.degree <= 0:
        assert q.is_zero()
    else:
        assert q.degree == p.degree - 1
        assert q.leading == p.leading * p.degree


@given(polys, polys)
@settings(max_examples=60)
def test_derivative_product_rule(p, q):
    lhs = (p * q).derivative()
    rhs = p.derivative() * q + p * q.derivative()
    assert lhs == rhs


@given(polys, st.fractions(min_value=Fraction(-20), max_value=Fraction(20), max_denominator=8))
def test_eval_at_matches_power_expansion(p, a):
    want = sum((c * a**i for i, c in enumerate(p.coeffs)), Fraction(0))
    assert p.eval_at(a) == want


def test_monic_and_scale():
    p = Poly([2, 4])
    assert p.monic() == Poly([Fraction(1, 2), 1])
    assert p.scale(Fraction(1, 2)) == Poly([1, 2])
    with pytest.raises(ValueError):
        Poly().monic()


def test_str_rendering():
    assert str(Poly()) == "0"
    assert str(Poly([1, 2, 1])) == "x^2 + 2*x + 1"
    assert str(Poly([0, 1])) == "x"
    assert str(Poly([Fraction(1, 2)])) == "1/2"
