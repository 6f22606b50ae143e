"""Exact arithmetic in a real quadratic field Q(sqrt(d))."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Union

from .precreal import DEFAULT_PREC, PrecReal


def squarefree_split(n: int) -> tuple[int, int]:
    """Write ``n > 0`` as ``s**2 * d`` with ``d`` squarefree; return ``(s, d)``."""
    if n <= 0:
        raise ValueError("expected a positive integer")
    s, d, p = 1, n, 2
    while p * p <= d:
        while d % (p * p) == 0:
            d //= p * p
            s *= p
        p += 1
    return s, d


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class QuadElement:
    """``a + b*sqrt(d)`` with rational ``a, b`` and squarefree ``d > 1``."""

    a: Fraction
    b: Fraction = Fraction(0)
    d: int = 2

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.d < 2 or squarefree_split(self.d)[0] != 1:
            raise ValueError(f"radicand must be squarefree and > 1, got {self.d}")

    @classmethod
    def sqrt(cls, d: int) -> "QuadElement":
        return cls(0, 1, d)

    # coercion ---------------------------------------------------------

    def _lift(self, other) -> "QuadElement":
        if isinstance(other, QuadElement):
            if other.d != self.d and other.b != 0 and self.b != 0:
                raise ValueError("elements of different quadratic fields")
            return other if other.d == self.d else QuadElement(other.a, other.b, self.d)
        if isinstance(other, (int, Fraction)):
            return QuadElement(other, 0, self.d)
        return NotImplemented

    # field operations -------------------------------------------------

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuadElement(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadElement(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuadElement(self.a * o.a + self.d * self.b * o.b, self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def conj(self) -> "QuadElement":
        return QuadElement(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def inverse(self) -> "QuadElement":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        c = self.conj()
        return QuadElement(c.a / n, c.b / n, self.d)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int) -> "QuadElement":
        if n < 0:
            return self.inverse() ** (-n)
        result, base = QuadElement(1, 0, self.d), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # exact order ------------------------------------------------------

    def is_rational(self) -> bool:
        return self.b == 0

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def sign(self) -> int:
        """Exact sign of the real embedding with sqrt(d) > 0."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0 or sa == sb:
            return sa or sb
        if sa == 0:
            return sb
        # opposite signs: compare a**2 with d*b**2
        diff = self.a * self.a - self.d * self.b * self.b
        return sa if diff > 0 else sb

    def __eq__(self, other):
        o = self._lift(other) if not isinstance(other, QuadElement) else other
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and (self.b == o.b) and (self.b == 0 or self.d == o.d)

    def __hash__(self):
        return hash((self.a, self.b, self.d if self.b else 0))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # algebraic data ---------------------------------------------------

    def minimal_polynomial(self) -> tuple[int, ...]:
        """Primitive integer minimal polynomial, leading coefficient positive.

        Coefficients are listed from the leading one down.
        """
        if self.b == 0:
            return (self.a.denominator, -self.a.numerator)
        tr, nm = self.trace(), self.norm()
        den = _lcm(tr.denominator, nm.denominator)
        coeffs = [den, -int(tr * den), int(nm * den)]
        g = 0
        for c in coeffs:
            g = gcd(g, c)
        return tuple(c // g for c in coeffs)

    def degree(self) -> int:
        return 1 if self.b == 0 else 2

    def conjugates(self) -> tuple["QuadElement", ...]:
        return (self,) if self.b == 0 else (self, self.conj())

    # real embedding ---------------------------------------------------

    def to_real(self, prec: int = DEFAULT_PREC) -> PrecReal:
        if self.b == 0:
            return PrecReal.exact(self.a, prec)
        root = PrecReal.exact(self.d, prec).sqrt()
        return PrecReal.exact(self.a, prec) + PrecReal.exact(self.b, prec) * root

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * self.d**0.5

    def __repr__(self) -> str:
        if self.b == 0:
            return f"QuadElement({self.a})"
        return f"QuadElement({self.a} + {self.b}*sqrt({self.d}))"


Number = Union[int, Fraction, QuadElement]


def as_quad(x: Number, d: int = 2) -> QuadElement:
    return x if isinstance(x, QuadElement) else QuadElement(Fraction(x), 0, d)


def is_perfect_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


SQRT2 = QuadElement(0, 1, 2)
ALPHA = QuadElement(1, 1, 2)
BETA = QuadElement(1, -1, 2)
