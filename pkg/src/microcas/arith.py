"""Exact integer and rational arithmetic helpers.

Integers are plain Python ``int`` (arbitrary precision); exact rationals
are ``fractions.Fraction``, which is already canonical (positive
denominator, numerator and denominator coprime, zero is 0/1).  This
module only adds the operations whose contracts differ from the
builtins, plus text parsing/printing.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

_INT_RE = re.compile(r"[+-]?\d+\Z")


def int_divmod(n: int, d: int) -> tuple[int, int]:
    """Euclidean division: n == q*d + r with 0 <= r < abs(d)."""
    if d == 0:
        raise ZeroDivisionError("division by zero")
    q, r = divmod(n, d)
    if r < 0:
        # Python's remainder follows the divisor's sign; shift into [0, |d|).
        r += abs(d)
        q = (n - r) // d
    return q, r


def int_gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


def int_pow(base: int, exp: int) -> int:
    if exp < 0:
        raise ValueError("negative exponent has no integer value")
    return base**exp


def parse_int(text: str) -> int:
    text = text.strip()
    if not _INT_RE.match(text):
        raise ValueError(f"not an integer literal: {text!r}")
    return int(text)


def format_int(n: int) -> str:
    return str(n)


def rat_inv(x: Fraction) -> Fraction:
    if x == 0:
        raise ZeroDivisionError("inverse of zero")
    return 1 / x


def rat_pow(x: Fraction, exp: int) -> Fraction:
    """x**exp for integer exp; negative exponents need x != 0."""
    if exp < 0 and x == 0:
        raise ZeroDivisionError("negative power of zero")
    return x**exp


def parse_rat(text: str) -> Fraction:
    """Parse "-12", "3/2" or "1.5" into an exact rational."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational literal: {text!r}") from exc


def format_rat(x: Fraction) -> str:
    return str(x)
