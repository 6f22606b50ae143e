"""Continued fractions with exact convergents and certified partial quotients."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from ..errors import CertificationError, PrecisionError
from .precreal import DEFAULT_PREC, PrecReal
from .quantities import Quantity

PREC_CAP = 8192


def convergents_of(quotients: Sequence[int]) -> list[tuple[int, int]]:
    out = []
    p0, p1 = 1, 0  # p_{-1}, p_{-2}
    q0, q1 = 0, 1
    for a in quotients:
        p0, p1 = a * p0 + p1, p0
        q0, q1 = a * q0 + q1, q0
        out.append((p0, q0))
    return out


def rational_quotients(x: Fraction) -> list[int]:
    out = []
    n, d = x.numerator, x.denominator
    while d:
        a = n // d
        out.append(a)
        n, d = d, n - a * d
    return out


def certified_prefix(lo: Fraction, hi: Fraction, limit: int) -> list[int]:
    """Partial quotients shared by every real number in ``[lo, hi]``."""
    out: list[int] = []
    while len(out) < limit:
        a = lo.numerator // lo.denominator
        if hi.numerator // hi.denominator != a:
            break
        out.append(a)
        if lo == a:
            # the interval touches the integer a: the expansion may stop here
            break
        lo, hi = 1 / (hi - a), 1 / (lo - a)
    return out


@dataclass(frozen=True)
class ContinuedFraction:
    x: Quantity
    quotients: tuple[int, ...]
    convergents: tuple[tuple[int, int], ...]
    terminated: bool = False
    precision_bits: int = 0

    def __len__(self) -> int:
        return len(self.quotients)

    def first_index_above(self, bound) -> Optional[int]:
        """Least index i with q_i > bound, if one has been computed."""
        for i, (_, q) in enumerate(self.convergents):
            if q > bound:
                return i
        return None


def expand_cf(
    x: Quantity,
    count: int,
    prec_floor: int = DEFAULT_PREC,
    prec_cap: int = PREC_CAP,
) -> ContinuedFraction:
    """The first ``count`` partial quotients of ``x`` with exact convergents.

    Quotients are read off an interval enclosure, so each one holds for every
    real in it; the run is then repeated at twice the precision and must agree.
    A rational input returns its full (shorter) expansion with
    ``terminated=True``.
    """
    if count < 1:
        raise ValueError("count must be positive")
    if x.exact is not None:
        qs = rational_quotients(x.exact)
        terminated = len(qs) <= count
        qs = qs[:count]
        return ContinuedFraction(x, tuple(qs), tuple(convergents_of(qs)), terminated, 0)

    prec = prec_floor
    while True:
        enc = x.enclose(prec)
        qs = certified_prefix(enc.lower(), enc.upper(), count)
        if len(qs) >= count:
            break
        prec *= 2
        if prec > prec_cap:
            raise PrecisionError(
                f"only {len(qs)} of {count} quotients of {x.name} certified at {prec // 2} bits"
            )
    check_prec = 2 * prec
    enc2 = x.enclose(check_prec)
    again = certified_prefix(enc2.lower(), enc2.upper(), count)
    if again != qs:
        raise CertificationError(f"quotients of {x.name} disagree between {prec} and {check_prec} bits")
    return ContinuedFraction(x, tuple(qs), tuple(convergents_of(qs)), False, prec)


def expand_cf_until(
    x: Quantity,
    q_bound: int,
    extra: int = 0,
    prec_floor: int = DEFAULT_PREC,
    prec_cap: int = PREC_CAP,
) -> ContinuedFraction:
    """Expand until some q_i exceeds ``q_bound``, then ``extra`` more terms."""
    count = 16
    while True:
        cf = expand_cf(x, count, prec_floor, prec_cap)
        idx = cf.first_index_above(q_bound)
        if idx is not None and len(cf) >= idx + 1 + extra:
            return cf
        if cf.terminated:
            return cf
        count = max(2 * count, (idx or 0) + 1 + extra)


def nearest_int_distance(x: PrecReal) -> PrecReal:
    """||x||, the distance to the nearest integer, with a propagated bound.

    ||.|| is 1-Lipschitz and piecewise linear, so the image of ``[lo, hi]``
    is computed exactly from the endpoints and the kinks it contains.
    """
    if x.err >= Fraction(1, 4):
        raise PrecisionError(f"error {float(x.err):.3g} too large for a nearest-integer distance")
    lo, hi = x.lower(), x.upper()

    def dist(v: Fraction) -> Fraction:
        n = (2 * v.numerator + v.denominator) // (2 * v.denominator)  # round half up
        return abs(v - n)

    d_lo, d_hi = dist(lo), dist(hi)
    has_int = (lo.numerator // lo.denominator) != (hi.numerator // hi.denominator) or lo.denominator == 1
    shifted_lo, shifted_hi = lo - Fraction(1, 2), hi - Fraction(1, 2)
    has_half = (shifted_lo.numerator // shifted_lo.denominator) != (
        shifted_hi.numerator // shifted_hi.denominator
    ) or shifted_lo.denominator == 1
    low = Fraction(0) if has_int else min(d_lo, d_hi)
    high = Fraction(1, 2) if has_half else max(d_lo, d_hi)
    return PrecReal.from_bounds(low, high, x.prec)

