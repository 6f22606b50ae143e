"""Binary recurrences U_{k+2} = c1*U_{k+1} + c0*U_k, exact and via Binet."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .realfield.precreal import PrecReal
from .realfield.quad import QuadElement, squarefree_split


@dataclass(frozen=True)
class BinaryRecurrence:
    """Second-order recurrence with integer coefficients and initial values.

    ``envelope`` gives exponent offsets (lo, hi) with alpha**(k+lo) <= U_k <=
    alpha**(k+hi) for k >= ``envelope_from``.
    """

    c1: int
    c0: int
    u0: int
    u1: int
    name: str = ""
    envelope: tuple[int, int] = (0, 0)
    envelope_from: int = 0

    def __post_init__(self):
        if self.c1 * self.c1 + 4 * self.c0 <= 0:
            raise ValueError("characteristic polynomial must have distinct real roots")


PELL = BinaryRecurrence(2, 1, 0, 1, "pell", envelope=(-2, -1), envelope_from=2)
PELL_LUCAS = BinaryRecurrence(2, 1, 2, 2, "pell-lucas", envelope=(-1, 1), envelope_from=1)

SEQUENCES = {"pell": PELL, "pell-lucas": PELL_LUCAS}


def term(rec: BinaryRecurrence, k: int) -> int:
    if k < 0:
        raise ValueError("negative index")
    return _terms(rec, k)[k]


@lru_cache(maxsize=64)
def _terms_block(rec: BinaryRecurrence, n: int) -> tuple[int, ...]:
    out = [rec.u0, rec.u1]
    while len(out) <= n:
        out.append(rec.c1 * out[-1] + rec.c0 * out[-2])
    return tuple(out)


def _terms(rec: BinaryRecurrence, k: int) -> tuple[int, ...]:
    # round the cache key up so nearby indices share one table
    return _terms_block(rec, max(64, 1 << max(k, 1).bit_length()))


def roots(rec: BinaryRecurrence) -> tuple[QuadElement, QuadElement]:
    """(alpha, beta) with alpha the root of larger absolute value."""
    disc = rec.c1 * rec.c1 + 4 * rec.c0
    s, d = squarefree_split(disc)
    if d == 1:
        raise ValueError("rational characteristic roots are not supported")
    half = Fraction(1, 2)
    r1 = QuadElement(rec.c1 * half, s * half, d)
    r2 = QuadElement(rec.c1 * half, -s * half, d)
    return (r1, r2) if abs(r1) >= abs(r2) else (r2, r1)


def binet_coefficients(rec: BinaryRecurrence) -> tuple[QuadElement, QuadElement]:
    """(A, B) with U_k = A*alpha**k + B*beta**k."""
    alpha, beta = roots(rec)
    gap = alpha - beta
    return (rec.u1 - rec.u0 * beta) / gap, (rec.u0 * alpha - rec.u1) / gap


def binet_approx(rec: BinaryRecurrence, k: int, prec: int) -> PrecReal:
    """Binet value of U_k with absolute error at most 2**(-prec/2).

    ``prec`` is an absolute-accuracy target; the working precision adds the
    bit size of alpha**k on top of it.
    """
    if k < 0:
        raise ValueError("negative index")
    if prec < 64:
        raise ValueError("precision must be at least 64 bits")
    alpha, beta = roots(rec)
    A, B = binet_coefficients(rec)
    growth = math.ceil(k * math.log2(abs(float(alpha)) + 1e-9)) + 1
    work = prec + max(growth, 0) + 32
    target = Fraction(2) ** (-(prec // 2))
    while True:
        r = A.to_real(work) * alpha.to_real(work) ** k + B.to_real(work) * beta.to_real(work) ** k
        if r.err <= target:
            return r.with_prec(prec)
        work *= 2


def growth_envelope_check(rec: BinaryRecurrence, k: int) -> bool:
    """alpha**(k+lo) <= U_k <= alpha**(k+hi), decided in exact arithmetic."""
    if k < rec.envelope_from:
        raise ValueError(f"envelope for {rec.name or rec} holds from k={rec.envelope_from}")
    alpha, _ = roots(rec)
    lo, hi = rec.envelope
    u = term(rec, k)
    return alpha ** (k + lo) <= u <= alpha ** (k + hi)
