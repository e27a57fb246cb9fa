import math
from fractions import Fraction

import pytest

from hypercontainers.errors import InputError
from hypercontainers.ratmath import (
    E_LOWER,
    LN2_UPPER,
    format_fraction,
    frac_ceil,
    frac_floor,
    log_upper,
    parse_fraction,
)


def test_parse_fraction_accepts_ratios_and_integers():
    assert parse_fraction("3/4") == Fraction(3, 4)
    assert parse_fraction("7") == Fraction(7)
    assert parse_fraction("-2/6") == Fraction(-1, 3)


@pytest.mark.parametrize("bad", ["0.5", "3/0", "", "a/b", "1/2/3", "1e-3"])
def test_parse_fraction_rejects_everything_else(bad):
    with pytest.raises(InputError):
        parse_fraction(bad)


def test_format_round_trips():
    for f in [Fraction(3, 4), Fraction(5), Fraction(-7, 2), Fraction(0)]:
        assert parse_fraction(format_fraction(f)) == f


@pytest.mark.parametrize(
    "x", [Fraction(0), Fraction(7, 3), Fraction(-9, 4), Fraction(12), Fraction(-5)]
)
def test_ceil_floor_match_math(x):
    assert frac_ceil(x) == math.ceil(x)
    assert frac_floor(x) == math.floor(x)


def test_constants_bracket_their_targets():
    # exact comparisons; the float constants are themselves only ulp-accurate,
    # so allow that much slack in the direction the floats cannot certify
    assert LN2_UPPER > Fraction(math.log(2))
    assert LN2_UPPER - Fraction(math.log(2)) < Fraction(1, 10**9)
    # E_LOWER is the factorial series truncated at i = 20, strictly below e
    assert E_LOWER == sum(Fraction(1, math.factorial(i)) for i in range(21))
    assert abs(E_LOWER - Fraction(math.e)) < Fraction(1, 10**12)


def test_log_upper_is_exact_at_one():
    assert log_upper(Fraction(1)) == 0


@pytest.mark.parametrize(
    "x", [Fraction(2), Fraction(3, 2), Fraction(20), Fraction(1000), Fraction(101, 100)]
)
def test_log_upper_bounds_the_log_from_above(x):
    up = log_upper(x)
    assert isinstance(up, Fraction)
    # float(x) need not equal x, so leave ulp-sized slack around math.log
    assert up >= Fraction(math.log(float(x))) - Fraction(1, 10**12)
    # the bound should not be wildly loose either
    assert up <= Fraction(math.log(float(x))) + Fraction(1, 1000)


def test_log_upper_rejects_arguments_below_one():
    with pytest.raises(InputError):
        log_upper(Fraction(1, 2))
