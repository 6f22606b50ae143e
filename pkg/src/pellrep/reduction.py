"""Dujella-Pethő reduction and the Legendre-type bound for the homogeneous case."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import CertificationError, PrecisionError
from .realfield.cf import PREC_CAP, ContinuedFraction, expand_cf_until, nearest_int_distance
from .realfield.precreal import DEFAULT_PREC, PrecReal
from .realfield.quantities import Quantity

MAX_ATTEMPTS = 10

Real = Union[int, Fraction, PrecReal]


def _as_quantity(x, name: str) -> Quantity:
    if isinstance(x, Quantity):
        return x
    if isinstance(x, PrecReal):
        return Quantity(name, lambda prec: x.with_prec(prec))
    return Quantity.rational(x, name)


@dataclass(frozen=True)
class ReductionInstance:
    """0 < |u*tau - v + mu| < A * B**(-w) with 1 <= u <= M."""

    tau: Quantity
    mu: Quantity
    M: int
    A: Real
    B: Quantity

    def __post_init__(self):
        object.__setattr__(self, "B", _as_quantity(self.B, "B"))
        if self.M < 1:
            raise ValueError("M must be a positive integer")
        if PrecReal.coerce(self.A, 64).lo <= 0:
            raise ValueError("A must be positive")
        if self.B.enclose(64).lo <= 1:
            raise ValueError("B must exceed 1")
        if self.tau.exact is not None:
            raise ValueError("tau must be irrational")


@dataclass(frozen=True)
class ReductionResult:
    q_used: int
    index: int
    eps: PrecReal
    w_bound: int
    precision_bits: int


def working_precision(M: int, q: int, floor: int = DEFAULT_PREC) -> int:
    """Bits so that M*q*2**-prec is far below any epsilon of interest."""
    need = M.bit_length() + q.bit_length() + 96
    p = max(floor, need)
    return -(-p // 64) * 64


def epsilon(
    mu: Quantity, tau: Quantity, q: int, M: int, prec: int, prec_cap: int = PREC_CAP
) -> tuple[PrecReal, int]:
    """||mu*q|| - M*||tau*q|| with a certified sign, and the precision that decided it.

    Interval subtraction takes the lower end of the first term against the
    upper end of the second, so a positive lower bound is genuinely positive.
    """
    p = prec
    while True:
        try:
            e = nearest_int_distance(mu.enclose(p) * q) - nearest_int_distance(tau.enclose(p) * q) * M
            e.sign()
            return e, p
        except PrecisionError:
            p *= 2
            if p > prec_cap:
                raise PrecisionError(f"sign of epsilon for {mu.name} undecided at {p // 2} bits")


def w_ceiling(A: Real, q: int, eps: PrecReal, B: Quantity, prec: int = DEFAULT_PREC) -> int:
    """floor(log(A*q/eps)/log B), evaluated from above with eps taken at its lower end."""
    if eps.lo <= 0:
        raise ValueError("epsilon must be certified positive")
    e_lo = PrecReal.exact(eps.lower(), prec)
    x = (PrecReal.coerce(A, prec) * q / e_lo).log() / _as_quantity(B, "B").enclose(prec).log()
    return x.floor_upper()


def _cf_for(tau: Quantity, M: int, extra: int, cf: Optional[ContinuedFraction], prec_floor: int, prec_cap: int):
    if cf is not None:
        i0 = cf.first_index_above(6 * M)
        if i0 is not None and len(cf) >= i0 + extra:
            return cf, i0
    cf = expand_cf_until(tau, 6 * M, extra=extra, prec_floor=prec_floor, prec_cap=prec_cap)
    i0 = cf.first_index_above(6 * M)
    if i0 is None:
        raise CertificationError(f"expansion of {tau.name} terminated below 6M")
    return cf, i0


def dujella_petho_reduce(
    inst: ReductionInstance,
    max_attempts: int = MAX_ATTEMPTS,
    cf: Optional[ContinuedFraction] = None,
    prec_floor: int = DEFAULT_PREC,
    prec_cap: int = PREC_CAP,
) -> ReductionResult:
    """First convergent q > 6M with epsilon > 0, and the resulting ceiling on w.

    No integers 1 <= u <= M, v and w > w_bound satisfy the inequality.
    """
    if inst.mu.is_zero:
        raise ValueError("mu = 0: use legendre_lower_bound")
    cf, i0 = _cf_for(inst.tau, inst.M, max_attempts, cf, prec_floor, prec_cap)
    tried = []
    for j in range(i0, min(i0 + max_attempts, len(cf))):
        q = cf.convergents[j][1]
        eps, p = epsilon(inst.mu, inst.tau, q, inst.M, working_precision(inst.M, q, prec_floor), prec_cap)
        if eps.sign() > 0:
            return ReductionResult(q, j, eps, w_ceiling(inst.A, q, eps, inst.B, p), p)
        tried.append(j)
    raise CertificationError(f"epsilon <= 0 at convergent indices {tried}")


# many digit cases sharing one tau ---------------------------------------


@dataclass(frozen=True)
class CaseRow:
    label: str
    eps: PrecReal
    w_bound: int


@dataclass(frozen=True)
class CaseReduction:
    """One convergent shared by every case; the bounds are the worst over cases."""

    q_used: int
    index: int
    w_bound: int
    min_eps: PrecReal
    rows: tuple[CaseRow, ...]
    precision_bits: int
    window: tuple[tuple[int, Optional[int]], ...]


def _scan(cases, tau_term: PrecReal, q: int, M: int, A, B, prec: int, prec_cap: int, tau: Quantity):
    rows = []
    for label, mu in cases:
        e = nearest_int_distance(mu.enclose(prec) * q) - tau_term
        try:
            sign = e.sign()
        except PrecisionError:
            e, p = epsilon(mu, tau, q, M, 2 * prec, prec_cap)
            sign = e.sign()
        if sign <= 0:
            return None
        rows.append(CaseRow(label, e, w_ceiling(A, q, e, B, prec)))
    return rows


def reduce_cases(
    tau: Quantity,
    cases: Sequence[tuple[str, Quantity]],
    M: int,
    A: Real,
    B,
    window: int = MAX_ATTEMPTS,
    cf: Optional[ContinuedFraction] = None,
    prec_floor: int = DEFAULT_PREC,
    prec_cap: int = PREC_CAP,
    threads: int = 1,
) -> CaseReduction:
    """Reduce every (label, mu) case with one common convergent.

    The candidates are the ``window`` convergents starting at the first
    q > 6M; among those giving epsilon > 0 for all cases, the one with the
    smallest worst-case w_bound is kept (earliest on ties).
    """
    if not cases:
        raise ValueError("no cases")
    if any(mu.is_zero for _, mu in cases):
        raise ValueError("mu = 0 cases belong to the Legendre branch")
    B = _as_quantity(B, "B")
    cf, i0 = _cf_for(tau, M, window, cf, prec_floor, prec_cap)
    stop = min(i0 + window, len(cf))
    prec = working_precision(M, cf.convergents[stop - 1][1], prec_floor)
    summary = []
    best = None
    for j in range(i0, stop):
        q = cf.convergents[j][1]
        tau_term = nearest_int_distance(tau.enclose(prec) * q) * M
        if threads > 1:
            chunk = -(-len(cases) // threads)
            parts = [cases[s : s + chunk] for s in range(0, len(cases), chunk)]
            with ThreadPoolExecutor(max_workers=threads) as pool:
                res = list(pool.map(lambda c: _scan(c, tau_term, q, M, A, B, prec, prec_cap, tau), parts))
            rows = None if any(r is None for r in res) else [row for r in res for row in r]
        else:
            rows = _scan(cases, tau_term, q, M, A, B, prec, prec_cap, tau)
        if rows is None:
            summary.append((j, None))
            continue
        worst = max(r.w_bound for r in rows)
        summary.append((j, worst))
        if best is None or worst < best[2]:
            best = (j, q, worst, rows)
    if best is None:
        raise CertificationError(f"no convergent in indices {i0}..{stop - 1} gives epsilon > 0 for every case")
    j, q, worst, rows = best
    min_eps = min((r.eps for r in rows), key=lambda e: e.lo)
    return CaseReduction(q, j, worst, min_eps, tuple(rows), prec, tuple(summary))


# homogeneous branch -------------------------------------------------------


def legendre_lower_bound(
    tau: Quantity, k_max: int, prec_floor: int = DEFAULT_PREC, prec_cap: int = PREC_CAP
) -> tuple[int, int]:
    """(a_max, N) with |k*tau - n| > 1/((a_max + 2)*k) for 1 <= k <= k_max.

    N is the least index with q_N > k_max and a_max = max(a_0..a_N).
    """
    if k_max < 1:
        raise ValueError("k_max must be positive")
    cf = expand_cf_until(tau, k_max, prec_floor=prec_floor, prec_cap=prec_cap)
    N = cf.first_index_above(k_max)
    if N is None:
        raise CertificationError(f"expansion of {tau.name} terminated below {k_max}")
    return max(cf.quotients[: N + 1]), N


def legendre_w_ceiling(A: Real, a_max: int, k_max: int, base: Real = 10, prec: int = DEFAULT_PREC) -> int:
    """Largest w allowed by 1/((a_max + 2)*k) < A*base**-w with k <= k_max."""
    x = (PrecReal.coerce(A, prec) * (a_max + 2) * k_max).log() / PrecReal.coerce(base, prec).log()
    # w < x, so w <= ceil(x) - 1
    return x.ceil_upper() - 1
