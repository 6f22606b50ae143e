"""Certified real numbers as closed intervals with MPFR directed rounding.

Every operation rounds the lower endpoint down and the upper endpoint up, so
the true quantity always lies in ``[lo, hi]``.  ``value`` and ``err`` give the
midpoint/radius view used throughout the proofs.
"""

from __future__ import annotations

import math

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import gmpy2
from gmpy2 import mpfr, mpq

from ..errors import PrecisionError

DEFAULT_PREC = 256

Exact = Union[int, Fraction]


def _ctx(prec: int, up: bool):
    return gmpy2.context(precision=prec, round=gmpy2.RoundUp if up else gmpy2.RoundDown)


def _to_mpfr(x, prec: int, up: bool) -> mpfr:
    with _ctx(prec, up):
        if isinstance(x, Fraction):
            return mpfr(mpq(x.numerator, x.denominator))
        return mpfr(x)


def as_fraction(x: mpfr) -> Fraction:
    n, d = x.as_integer_ratio()
    return Fraction(int(n), int(d))


def decimal_string(x: Union[mpfr, Fraction], digits: int = 20, up: bool = False) -> str:
    """Scientific notation with ``digits`` significant digits, rounded toward +inf if ``up``."""
    fr = x if isinstance(x, Fraction) else as_fraction(x)
    if fr == 0:
        return "0"
    neg = fr < 0
    a = -fr if neg else fr
    e = len(str(a.numerator)) - len(str(a.denominator))
    while a >= Fraction(10) ** (e + 1):
        e += 1
    while a < Fraction(10) ** e:
        e -= 1
    scaled = a / Fraction(10) ** (e - digits + 1)
    # magnitude rounds away from zero when moving toward the requested side
    away = up != neg
    mant = -((-scaled.numerator) // scaled.denominator) if away else scaled.numerator // scaled.denominator
    if mant >= 10**digits:
        mant //= 10
        e += 1
    s = str(mant)
    body = s[0] + ("." + s[1:] if len(s) > 1 else "")
    return f"{'-' if neg else ''}{body}e{e:+d}"


@dataclass(frozen=True)
class PrecReal:
    """A real number known to lie in ``[lo, hi]``, computed at ``prec`` bits."""

    lo: mpfr
    hi: mpfr
    prec: int = DEFAULT_PREC

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    # construction -----------------------------------------------------

    @classmethod
    def exact(cls, x: Union[Exact, mpfr], prec: int = DEFAULT_PREC) -> "PrecReal":
        return cls(_to_mpfr(x, prec, False), _to_mpfr(x, prec, True), prec)

    @classmethod
    def from_bounds(cls, lo, hi, prec: int = DEFAULT_PREC) -> "PrecReal":
        return cls(_to_mpfr(lo, prec, False), _to_mpfr(hi, prec, True), prec)

    @classmethod
    def coerce(cls, x, prec: int = DEFAULT_PREC) -> "PrecReal":
        if isinstance(x, PrecReal):
            return x
        if isinstance(x, float):
            x = Fraction(x)
        return cls.exact(x, prec)

    # views ------------------------------------------------------------

    @property
    def value(self) -> mpfr:
        p = max(self.prec, self.lo.precision, self.hi.precision) + 2
        with gmpy2.context(precision=p, round=gmpy2.RoundToNearest):
            return _to_mpfr((self.lower() + self.upper()) / 2, p, False)

    @property
    def err(self) -> mpfr:
        """Radius about ``value``, rounded up; exact up to that final rounding."""
        mid = as_fraction(self.value)
        return _to_mpfr(max(self.upper() - mid, mid - self.lower()), 64, True)

    @property
    def width(self) -> mpfr:
        with _ctx(max(self.prec, 53), True):
            return self.hi - self.lo

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def lower(self) -> Fraction:
        return as_fraction(self.lo)

    def upper(self) -> Fraction:
        return as_fraction(self.hi)

    def contains(self, x) -> bool:
        if isinstance(x, PrecReal):
            return self.lo <= x.lo and x.hi <= self.hi
        fr = Fraction(x) if not isinstance(x, mpfr) else as_fraction(x)
        return self.lower() <= fr <= self.upper()

    def overlaps(self, other: "PrecReal") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def __float__(self) -> float:
        return float(self.value)

    def __repr__(self) -> str:
        return f"PrecReal({self.value:.20g} ± {float(self.err):.3g}, prec={self.prec})"

    def __str__(self) -> str:
        return f"{decimal_string(self.value, 20)} ± {decimal_string(self.err, 3, up=True)}"

    def to_json(self, digits: int = 20) -> dict:
        return {"lo": decimal_string(self.lo, digits, up=False), "hi": decimal_string(self.hi, digits, up=True)}

    @classmethod
    def from_json(cls, doc: dict, prec: int = DEFAULT_PREC) -> "PrecReal":
        return cls.from_bounds(Fraction(doc["lo"]), Fraction(doc["hi"]), prec)

    # arithmetic -------------------------------------------------------

    def _other(self, other) -> "PrecReal":
        return other if isinstance(other, PrecReal) else PrecReal.coerce(other, self.prec)

    def __neg__(self) -> "PrecReal":
        # gmpy2 rounds even negation to the active context, so widen it
        p = max(self.prec, self.lo.precision, self.hi.precision)
        with _ctx(p, False):
            lo = -self.hi
        with _ctx(p, True):
            hi = -self.lo
        return PrecReal(lo, hi, self.prec)

    def __abs__(self) -> "PrecReal":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return PrecReal(mpfr(0), max((-self).hi, self.hi), self.prec)

    def __add__(self, other) -> "PrecReal":
        o = self._other(other)
        p = max(self.prec, o.prec)
        with _ctx(p, False):
            lo = self.lo + o.lo
        with _ctx(p, True):
            hi = self.hi + o.hi
        return PrecReal(lo, hi, p)

    __radd__ = __add__

    def __sub__(self, other) -> "PrecReal":
        return self + (-self._other(other))

    def __rsub__(self, other) -> "PrecReal":
        return self._other(other) + (-self)

    def __mul__(self, other) -> "PrecReal":
        o = self._other(other)
        p = max(self.prec, o.prec)
        pairs = [(self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi)]
        with _ctx(p, False):
            lo = min(a * b for a, b in pairs)
        with _ctx(p, True):
            hi = max(a * b for a, b in pairs)
        return PrecReal(lo, hi, p)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "PrecReal":
        o = self._other(other)
        if o.lo <= 0 <= o.hi:
            if o.lo == o.hi == 0:
                raise ZeroDivisionError("division by exact zero")
            raise PrecisionError("divisor interval contains zero")
        p = max(self.prec, o.prec)
        pairs = [(self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi)]
        with _ctx(p, False):
            lo = min(a / b for a, b in pairs)
        with _ctx(p, True):
            hi = max(a / b for a, b in pairs)
        return PrecReal(lo, hi, p)

    def __rtruediv__(self, other) -> "PrecReal":
        return self._other(other) / self

    def __pow__(self, n: int) -> "PrecReal":
        if not isinstance(n, int):
            raise TypeError("only integer powers are supported")
        if n < 0:
            return PrecReal.exact(1, self.prec) / (self ** (-n))
        # x**n is monotone on [0, inf) for even n and on R for odd n
        base = abs(self) if n % 2 == 0 else self
        with _ctx(self.prec, False):
            lo = base.lo**n
        with _ctx(self.prec, True):
            hi = base.hi**n
        return PrecReal(lo, hi, self.prec)

    def log(self) -> "PrecReal":
        if self.hi <= 0:
            raise ValueError("logarithm of a non-positive number")
        if self.lo <= 0:
            raise PrecisionError("log argument interval reaches zero")
        with _ctx(self.prec, False):
            lo = gmpy2.log(self.lo)
        with _ctx(self.prec, True):
            hi = gmpy2.log(self.hi)
        return PrecReal(lo, hi, self.prec)

    def exp(self) -> "PrecReal":
        with _ctx(self.prec, False):
            lo = gmpy2.exp(self.lo)
        with _ctx(self.prec, True):
            hi = gmpy2.exp(self.hi)
        return PrecReal(lo, hi, self.prec)

    def sqrt(self) -> "PrecReal":
        if self.lo < 0:
            raise ValueError("square root of a possibly negative number")
        with _ctx(self.prec, False):
            lo = gmpy2.sqrt(self.lo)
        with _ctx(self.prec, True):
            hi = gmpy2.sqrt(self.hi)
        return PrecReal(lo, hi, self.prec)

    def max(self, other) -> "PrecReal":
        o = self._other(other)
        return PrecReal(max(self.lo, o.lo), max(self.hi, o.hi), max(self.prec, o.prec))

    def min(self, other) -> "PrecReal":
        o = self._other(other)
        return PrecReal(min(self.lo, o.lo), min(self.hi, o.hi), max(self.prec, o.prec))

    def hull(self, other) -> "PrecReal":
        o = self._other(other)
        return PrecReal(min(self.lo, o.lo), max(self.hi, o.hi), max(self.prec, o.prec))

    # certified discrete views ------------------------------------------

    def sign(self) -> int:
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == self.hi == 0:
            return 0
        raise PrecisionError(f"sign undecided for {self!r}")

    def floor(self) -> int:
        a, b = math.floor(self.lower()), math.floor(self.upper())
        if a != b:
            raise PrecisionError(f"floor undecided for {self!r}")
        return a

    def ceil(self) -> int:
        a, b = math.ceil(self.lower()), math.ceil(self.upper())
        if a != b:
            raise PrecisionError(f"ceil undecided for {self!r}")
        return a

    def floor_upper(self) -> int:
        """Floor of the upper endpoint: an integer >= floor(true value)."""
        return math.floor(self.upper())

    def ceil_upper(self) -> int:
        return math.ceil(self.upper())

    def to_integer(self) -> int:
        """The integer a value known to be integral must equal."""
        if self.err >= Fraction(1, 2):
            raise PrecisionError(f"error {float(self.err):.3g} too large to recover an integer")
        lo, hi = math.ceil(self.lower()), math.floor(self.upper())
        if lo != hi:
            raise PrecisionError(f"no unique integer in {self!r}")
        return lo

    def with_prec(self, prec: int) -> "PrecReal":
        return PrecReal(self.lo, self.hi, prec)


def round_up(x: PrecReal, digits: int = 6) -> Fraction:
    """A short decimal rational that is >= every point of ``x``."""
    return Fraction(decimal_string(x.hi, digits, up=True))


def round_down(x: PrecReal, digits: int = 6) -> Fraction:
    return Fraction(decimal_string(x.lo, digits, up=False))


def log_const(x: Exact, prec: int = DEFAULT_PREC) -> PrecReal:
    return PrecReal.exact(x, prec).log()

