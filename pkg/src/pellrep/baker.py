"""Matveev's lower bound, the log/exp comparison factors, and k-ceiling solving."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import CertificationError
from .realfield.heights import eval_log
from .realfield.precreal import DEFAULT_PREC, PrecReal

Real = Union[int, Fraction, PrecReal]

MATVEEV_MIN_A = Fraction(4, 25)


def _pr(x: Real, prec: int) -> PrecReal:
    return PrecReal.coerce(x, prec)


def _at_most_below(x: Real, bound: Fraction) -> bool:
    # exact inputs compare exactly; enclosures count as below only when certainly so
    if isinstance(x, PrecReal):
        return x.hi < bound
    return Fraction(x) < bound


@dataclass(frozen=True)
class MatveevInstance:
    """Inputs to Matveev's theorem; ``B=None`` keeps the exponent bound symbolic."""

    t: int
    D: int
    A: tuple
    B: Optional[Real] = None
    b: tuple = ()
    flags: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if self.t < 1 or self.D < 1:
            raise ValueError("need t >= 1 and D >= 1")
        if len(self.A) != self.t:
            raise ValueError(f"expected {self.t} height parameters, got {len(self.A)}")
        for a in self.A:
            if _at_most_below(a, MATVEEV_MIN_A):
                raise ValueError(f"A_i must be >= 0.16, got {a}")
        flags = list(self.flags)
        if self.B is not None:
            if _at_most_below(self.B, 1):
                raise ValueError("B must be >= 1")
            if _at_most_below(self.B, 3):
                flags.append("B < 3: 1 + log B may be below 2")
        object.__setattr__(self, "flags", tuple(flags))


def matveev_coefficient(t: int, D: int, A: Sequence[Real], prec: int = DEFAULT_PREC) -> PrecReal:
    """1.4 * 30**(t+3) * t**4.5 * D**2 * (1 + log D) * prod(A): the factor of (1 + log B)."""
    c = PrecReal.exact(Fraction(7, 5) * 30 ** (t + 3) * t**4 * D**2, prec)
    c = c * PrecReal.exact(t, prec).sqrt()
    c = c * (eval_log(D, prec) + 1)
    for a in A:
        c = c * _pr(a, prec)
    return c


def matveev_exponent(inst: MatveevInstance, prec: int = DEFAULT_PREC) -> PrecReal:
    """c with log|Lambda| > -c; use ``.hi`` as the rounded-up value."""
    if inst.B is None:
        raise ValueError("B is symbolic; use matveev_coefficient")
    coeff = matveev_coefficient(inst.t, inst.D, inst.A, prec)
    return coeff * (_pr(inst.B, prec).log() + 1)


def _check_a(a: Real, prec: int) -> PrecReal:
    ap = _pr(a, prec)
    if not (0 < ap.lo and ap.hi < 1):
        raise ValueError(f"need 0 < a < 1, got {a}")
    return ap


def weber_log_factor(a: Real, prec: int = DEFAULT_PREC) -> PrecReal:
    """-log(1 - a)/a: |log(1 + x)| < factor*|x| whenever |x| < a."""
    ap = _check_a(a, prec)
    return -((1 - ap).log()) / ap


def weber_exp_factor(a: Real, prec: int = DEFAULT_PREC) -> PrecReal:
    """a/(1 - e**-a): |x| < factor*|e**x - 1| whenever |x| < a."""
    ap = _check_a(a, prec)
    return ap / (1 - (-ap).exp())


# k-ceilings -------------------------------------------------------------


@dataclass(frozen=True)
class LogPolynomialBound:
    """The inequality k < a2*L**2 + a1*L + a0 with L = 1 + log(k + shift).

    Both shapes arising from the Matveev steps reduce to this form with
    non-negative coefficients.
    """

    a2: PrecReal
    a1: PrecReal
    a0: PrecReal
    shift: int = 0
    label: str = ""

    def __post_init__(self):
        for c in (self.a2, self.a1, self.a0):
            if c.lo < 0:
                raise ValueError("coefficients must be non-negative")

    def _L(self, k, prec: int) -> PrecReal:
        return PrecReal.coerce(k + self.shift, prec).log() + 1

    def rhs(self, k, prec: int = DEFAULT_PREC) -> PrecReal:
        L = self._L(k, prec)
        return self.a2 * L * L + self.a1 * L + self.a0

    def derivative(self, k, prec: int = DEFAULT_PREC) -> PrecReal:
        L = self._L(k, prec)
        return (self.a2 * L * 2 + self.a1) / PrecReal.coerce(k + self.shift, prec)

    def holds(self, k: int, prec: int = DEFAULT_PREC) -> Optional[bool]:
        """True/False when certified, None when the enclosure straddles k."""
        r = self.rhs(k, prec)
        if k < r.lo:
            return True
        if k >= r.hi:
            return False
        return None

    def to_json(self) -> dict:
        return {
            "form": "k < a2*L^2 + a1*L + a0, L = 1 + log(k + shift)",
            "a2": self.a2.to_json(),
            "a1": self.a1.to_json(),
            "a0": self.a0.to_json(),
            "shift": self.shift,
        }


def log_power_shape(c: Real, power: int = 2, shift: int = 0, prec: int = DEFAULT_PREC) -> LogPolynomialBound:
    """k < c*(1 + log(k + shift))**power for power in 0..2."""
    zero = PrecReal.exact(0, prec)
    cp = _pr(c, prec)
    coeffs = {0: (zero, zero, cp), 1: (zero, cp, zero), 2: (cp, zero, zero)}
    if power not in coeffs:
        raise ValueError("power must be 0, 1 or 2")
    return LogPolynomialBound(*coeffs[power], shift=shift, label=f"k < c*L^{power}")


def coupled_shape(
    s: Real,
    d: Real,
    c: Real,
    e1: Real,
    e2: Real,
    c_w: Real,
    d_w: Real,
    w_scale: Real,
    shift: int = 0,
    prec: int = DEFAULT_PREC,
) -> LogPolynomialBound:
    """s*k - d < c*L*(e1 + e2*w) jointly with w*w_scale < c_w*L + d_w."""
    s, d, c, e1, e2, c_w, d_w, w_scale = (_pr(v, prec) for v in (s, d, c, e1, e2, c_w, d_w, w_scale))
    a2 = c * e2 * c_w / w_scale / s
    a1 = c * (e1 + e2 * d_w / w_scale) / s
    a0 = d / s
    return LogPolynomialBound(a2, a1, a0, shift=shift, label="coupled")


def solve_k_ceiling(
    shape: LogPolynomialBound, prec: int = DEFAULT_PREC, k0: int = 10, max_iter: int = 200
) -> int:
    """Least K such that the inequality fails for every k >= K.

    Fixed-point iteration k <- rhs(k) from ``k0``; the result is checked by
    substitution at K and K - 1, and rhs'(K) < 1 guarantees it keeps failing
    beyond K (rhs' is decreasing in k).
    """
    # integer iterates: gmpy2's own ceil rounds to the context precision
    K = k0
    for _ in range(max_iter):
        nxt = shape.rhs(K, prec).ceil_upper()
        if nxt == K:
            break
        K = nxt
    else:
        raise CertificationError(f"k-ceiling iteration did not converge in {max_iter} steps")
    while shape.holds(K, prec) is not False:
        K += 1
    while K > 1 and shape.holds(K - 1, prec) is False:
        K -= 1
    if shape.derivative(K, prec).hi >= 1:
        raise CertificationError(f"cannot certify that the inequality keeps failing beyond {K}")
    return K
