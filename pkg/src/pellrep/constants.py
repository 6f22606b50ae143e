"""Named real constants used by the proofs and the command line."""

from __future__ import annotations

import re
from fractions import Fraction

from .realfield.quad import ALPHA, QuadElement
from .realfield.quantities import Quantity

TWO_SQRT2_OVER_9 = QuadElement(0, Fraction(2, 9), 2)


def pell_gamma() -> Quantity:
    return Quantity.log_ratio(ALPHA, 10, "pell-gamma")


def pell_gamma_inv() -> Quantity:
    return Quantity.log_ratio(10, ALPHA, "pell-gamma-inv")


def golden() -> Quantity:
    return Quantity.of(QuadElement(Fraction(1, 2), Fraction(1, 2), 5), "golden")


def sqrt_const(d: int) -> Quantity:
    return Quantity.of(QuadElement(0, 1, d), f"sqrt{d}")


# gamma_3 of the two linear forms ------------------------------------------


def pell_lambda1_gamma(a1: int) -> QuadElement:
    """9/(a1*2*sqrt2)."""
    return QuadElement(0, Fraction(9, 4 * a1), 2)


def pl_lambda1_gamma(a1: int) -> QuadElement:
    return QuadElement(Fraction(9, a1))


def pell_lambda2_gamma(a1: int, a2: int, w: int) -> QuadElement:
    """(a1 - a2*10**-w) * 2*sqrt2/9."""
    return TWO_SQRT2_OVER_9 * Fraction(a1 * 10**w - a2, 10**w)


def pl_lambda2_gamma(a1: int, a2: int, w: int) -> QuadElement:
    return QuadElement(Fraction(a1 * 10**w - a2, 9 * 10**w))


def pell_mu1(a1: int) -> Quantity:
    return Quantity.log_ratio(pell_lambda1_gamma(a1), 10, f"pell-mu1-a{a1}")


def pl_mu1(a1: int) -> Quantity:
    return Quantity.log_ratio(pl_lambda1_gamma(a1), 10, f"pl-mu1-a{a1}")


def pell_mu2(a1: int, a2: int, w: int) -> Quantity:
    return Quantity.log_ratio(pell_lambda2_gamma(a1, a2, w), ALPHA, f"pell-mu2-a{a1}-a{a2}-w{w}")


def pl_mu2(a1: int, a2: int, w: int) -> Quantity:
    return Quantity.log_ratio(pl_lambda2_gamma(a1, a2, w), ALPHA, f"pl-mu2-a{a1}-a{a2}-w{w}")


_FIXED = {
    "pell-gamma": pell_gamma,
    "pell-gamma-inv": pell_gamma_inv,
    "golden": golden,
    "sqrt2": lambda: sqrt_const(2),
    "sqrt3": lambda: sqrt_const(3),
    "sqrt5": lambda: sqrt_const(5),
    "sqrt3-minus-1": lambda: Quantity.of(QuadElement(-1, 1, 3), "sqrt3-minus-1"),
}

_PATTERNS = [
    (re.compile(r"pell-mu1-a([1-9])$"), pell_mu1),
    (re.compile(r"pl-mu1-a([1-9])$"), pl_mu1),
    (re.compile(r"pell-mu2-a([1-9])-a([1-9])-w([1-9][0-9]*)$"), pell_mu2),
    (re.compile(r"pl-mu2-a([1-9])-a([1-9])-w([1-9][0-9]*)$"), pl_mu2),
]

_DECIMAL = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")


def constant_names() -> list[str]:
    return sorted(_FIXED) + ["pell-mu1-a{1..9}", "pl-mu1-a{1..9}", "pell-mu2-a{A1}-a{A2}-w{W}", "pl-mu2-a{A1}-a{A2}-w{W}"]


def named(name: str) -> Quantity:
    if name in _FIXED:
        return _FIXED[name]()
    for pat, make in _PATTERNS:
        m = pat.match(name)
        if m:
            return make(*(int(g) for g in m.groups()))
    raise KeyError(f"unknown constant {name!r}")


def parse_quantity(text: str) -> Quantity:
    """A named constant, or a decimal literal read exactly."""
    text = text.strip()
    if _DECIMAL.match(text):
        return Quantity.rational(Fraction(text), text)
    return named(text)


def parse_decimal(text: str) -> Fraction:
    if not _DECIMAL.match(text.strip()):
        raise ValueError(f"malformed number {text!r}")
    return Fraction(text.strip())
