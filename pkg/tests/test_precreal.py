from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pellrep.errors import PrecisionError
from pellrep.realfield import PrecReal, decimal_string, round_down, round_up

fracs = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**6)
pos = st.fractions(min_value=Fraction(1, 10**6), max_value=10**6, max_denominator=10**6)


def enc(x, prec=128):
    return PrecReal.exact(x, prec)


@given(fracs, fracs)
def test_arithmetic_encloses_exact_result(x, y):
    a, b = enc(x), enc(y)
    assert (a + b).contains(x + y)
    assert (a - b).contains(x - y)
    assert (a * b).contains(x * y)
    if y != 0:
        assert (a / b).contains(x / y)


@given(fracs, st.integers(min_value=-5, max_value=7))
def test_integer_powers_enclose(x, n):
    if x == 0 and n < 0:
        return
    assert (enc(x) ** n).contains(x**n)


@settings(max_examples=60)
@given(pos)
def test_log_exp_sqrt_against_mpmath(x):
    mpmath.mp.prec = 400
    r = enc(x, 200)
    v = mpmath.mpf(x.numerator) / x.denominator
    for got, want in ((r.log(), mpmath.log(v)), (r.sqrt(), mpmath.sqrt(v)), (enc(x / 10**5, 200).exp(), mpmath.exp(v / 10**5))):
        lo, hi = got.lower(), got.upper()
        assert mpmath.mpf(lo.numerator) / lo.denominator <= want <= mpmath.mpf(hi.numerator) / hi.denominator


def test_division_by_interval_through_zero():
    with pytest.raises(PrecisionError):
        enc(1) / PrecReal.from_bounds(-1, 1)
    with pytest.raises(ZeroDivisionError):
        enc(1) / enc(0)


def test_sign_and_floor_refuse_to_guess():
    z = PrecReal.from_bounds(Fraction(-1, 10**30), Fraction(1, 10**30))
    with pytest.raises(PrecisionError):
        z.sign()
    with pytest.raises(PrecisionError):
        PrecReal.from_bounds(Fraction(99, 100), Fraction(101, 100)).floor()
    assert enc(0).sign() == 0
    assert PrecReal.from_bounds(Fraction(21, 10), Fraction(22, 10)).floor() == 2


def test_floor_and_ceil_are_exact_for_huge_values():
    # 53-bit rounding would move this by more than one unit
    big = 8876807314747678197335057328387
    r = enc(Fraction(2 * big + 1, 2), 256)
    assert r.floor() == big and r.ceil() == big + 1
    assert r.floor_upper() == big and r.ceil_upper() == big + 1


def test_to_integer():
    assert PrecReal.from_bounds(Fraction(23779, 10), Fraction(23781, 10)).to_integer() == 2378
    with pytest.raises(PrecisionError):
        PrecReal.from_bounds(Fraction(2, 1), Fraction(3, 1)).to_integer()


def test_decimal_strings_round_outward():
    third = enc(Fraction(1, 3))
    assert decimal_string(Fraction(1, 3), 5) == "3.3333e-1"
    assert decimal_string(Fraction(1, 3), 5, up=True) == "3.3334e-1"
    assert decimal_string(Fraction(-1, 3), 5, up=True) == "-3.3333e-1"
    assert round_down(third, 4) <= Fraction(1, 3) <= round_up(third, 4)


@given(fracs)
def test_json_round_trip_keeps_enclosure(x):
    r = enc(x)
    back = PrecReal.from_json(r.to_json())
    assert back.contains(x)


def test_hull_max_min():
    a, b = PrecReal.from_bounds(1, 2), PrecReal.from_bounds(Fraction(3, 2), 3)
    assert a.hull(b).lower() == 1 and a.hull(b).upper() == 3
    assert a.max(b).lower() == Fraction(3, 2) and a.min(b).upper() == 2
