"""Logarithms and absolute logarithmic heights with certified enclosures."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

from .precreal import DEFAULT_PREC, PrecReal
from .quad import Number, as_quad

HeightLike = Union[PrecReal, int, Fraction]


def eval_log(x: Number, prec: int = DEFAULT_PREC) -> PrecReal:
    """Natural log of a positive rational or quadratic number, err <= 2**(1 - prec)."""
    q = as_quad(x)
    if q.sign() <= 0:
        raise ValueError(f"log of non-positive number {x!r}")
    if q == 1:
        return PrecReal.exact(0, prec)
    target = Fraction(2) ** (1 - prec)
    work = prec + 16
    while True:
        r = q.to_real(work).log().with_prec(prec)
        if r.err <= target:
            return r
        work *= 2


def log_height(x: Number, prec: int = DEFAULT_PREC) -> PrecReal:
    """Absolute logarithmic height h(x), as an enclosure whose ``hi`` is an upper bound."""
    q = as_quad(x)
    if q.is_zero():
        raise ValueError("height of zero is undefined")
    if q.is_rational():
        r = q.a
        return eval_log(max(abs(r.numerator), r.denominator), prec)
    lead = q.minimal_polynomial()[0]
    total = eval_log(lead, prec)
    for conj in q.conjugates():
        # max(|x|, 1) is monotone, so the interval hull is still an enclosure
        total = total + abs(conj.to_real(prec + 16)).max(1).log()
    return (total / 2).with_prec(prec)


def height_bound_combination(
    parts: Iterable[tuple[HeightLike, int]], additions: int = 0, prec: int = DEFAULT_PREC
) -> PrecReal:
    """Upper bound on a height assembled from the standard rules.

    ``parts`` holds ``(h(eta_i), s_i)`` for a product ``prod eta_i**s_i``;
    ``additions`` counts the sums/differences, each costing ``log 2``.
    """
    total = PrecReal.exact(0, prec)
    for h, s in parts:
        hp = PrecReal.coerce(h, prec)
        if hp.lo < 0:
            raise ValueError("heights are non-negative")
        total = total + hp * abs(s)
    if additions:
        total = total + eval_log(2, prec) * additions
    return total


def matveev_A(x: Number, D: int, prec: int = DEFAULT_PREC) -> PrecReal:
    """The smallest admissible A = max(D*h(x), |log x|, 0.16), as an enclosure."""
    h = log_height(x, prec) * D
    lg = abs(eval_log(x, prec))
    return h.max(lg).max(Fraction(4, 25))

