"""Exact rational helpers: parsing, rounding, and certified log/e bounds.

Everything here is exact Fraction arithmetic.  Where a transcendental
constant enters a verdict (ln for the round cap, e for one binomial
bound) we use a one-sided rational bound in the direction that keeps the
verdict conservative, so no float ever decides a pass/fail.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import InputError


def parse_fraction(text: str) -> Fraction:
    """Parse 'num/den' or a bare integer string into a Fraction.

    Decimal notation is rejected on purpose; rationals cross the CLI
    boundary as num/den only.
    """
    s = text.strip()
    try:
        if "/" in s:
            num, den = s.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a 'num/den' rational: {text!r}") from exc


def format_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def frac_ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def frac_floor(x: Fraction) -> int:
    return x.numerator // x.denominator


def _atanh_upper(t: Fraction, terms: int = 24) -> Fraction:
    """Upper bound on atanh(t) for 0 <= t < 1.

    Truncates the series sum t^(2j+1)/(2j+1) after `terms` terms and adds
    the geometric tail bound t^(2J+3) / ((2J+3) (1 - t^2)).
    """
    if t == 0:
        return Fraction(0)
    total = Fraction(0)
    power = t
    tsq = t * t
    for j in range(terms):
        total += power / (2 * j + 1)
        power *= tsq
    # power is now t^(2*terms+1); the tail is bounded by a geometric series
    tail = power / ((2 * terms + 1) * (1 - tsq))
    return total + tail


# ln 2 < LN2_UPPER, from ln 2 = 2 atanh(1/3); the tail bound keeps it one-sided.
LN2_UPPER = 2 * _atanh_upper(Fraction(1, 3))

# e > E_LOWER: a truncation of sum 1/i!, strictly below e.
E_LOWER = sum(Fraction(1, math.factorial(i)) for i in range(21))


def log_upper(x: Fraction) -> Fraction:
    """Rational upper bound on ln(x) for x >= 1; exact 0 at x = 1.

    Writes x = 2^m * y with y in [1, 2) and bounds ln y via the atanh
    series, so the bound stays tight (relative error well under 1e-20).
    """
    x = Fraction(x)
    if x < 1:
        raise InputError("log_upper requires x >= 1")
    if x == 1:
        return Fraction(0)
    m = 0
    while x >= 2:
        x /= 2
        m += 1
    # ln y = 2 atanh((y-1)/(y+1)) with the argument below 1/3 for y < 2
    return m * LN2_UPPER + 2 * _atanh_upper((x - 1) / (x + 1))
