"""Base-10 repdigits and the exhaustive search for U_k = repdigit - repdigit."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .recurrences import BinaryRecurrence, term

BASE = 10
SEARCH_K_LIMIT = 200


@dataclass(frozen=True, order=True)
class RepdigitRep:
    a: int
    m: int

    def __post_init__(self):
        if not 1 <= self.a <= 9:
            raise ValueError(f"repdigit digit must be in 1..9, got {self.a}")
        if self.m < 1:
            raise ValueError(f"repdigit length must be >= 1, got {self.m}")


@dataclass(frozen=True, order=True)
class SolutionRecord:
    """U_k = value = a1*(10**n - 1)/9 - a2*(10**m - 1)/9."""

    k: int
    value: int
    a1: int
    n: int
    a2: int
    m: int

    @property
    def minuend(self) -> int:
        return repunit(self.n) * self.a1

    @property
    def subtrahend(self) -> int:
        return repunit(self.m) * self.a2

    def equation(self) -> str:
        return f"{self.value} = {self.minuend} - {self.subtrahend}"

    def to_json(self) -> dict:
        return {"k": self.k, "value": self.value, "a1": self.a1, "n": self.n, "a2": self.a2, "m": self.m}

    @classmethod
    def from_json(cls, doc: dict) -> "SolutionRecord":
        return cls(*(int(doc[f]) for f in ("k", "value", "a1", "n", "a2", "m")))


def repunit(m: int) -> int:
    return (BASE**m - 1) // (BASE - 1)


def repdigit_value(rep: RepdigitRep) -> int:
    return rep.a * repunit(rep.m)


def recognize_repdigit(N: int) -> Optional[RepdigitRep]:
    if N < 1:
        return None
    s = str(N)
    if s != s[0] * len(s):
        return None
    return RepdigitRep(int(s[0]), len(s))


def solutions_for_value(k: int, value: int) -> list[SolutionRecord]:
    """All representations of ``value`` as a1*R_n - a2*R_m with n >= 2, n >= m.

    Lengths n > digits(value) + 1 are impossible: for n > m the difference is
    at least R_n - 9*R_{n-1} = (10**(n-1) + 8)/9 > 10**(n-2).
    """
    out = []
    if value < 1:
        return out
    for n in range(2, len(str(value)) + 2):
        rn = repunit(n)
        for a1 in range(1, 10):
            rest = a1 * rn - value
            rep = recognize_repdigit(rest)
            if rep is None or rep.m > n:
                continue
            if rep.m == n and a1 <= rep.a:
                continue
            out.append(SolutionRecord(k, value, a1, n, rep.a, rep.m))
    return out


def _search_range(rec: BinaryRecurrence, ks: range) -> list[SolutionRecord]:
    out = []
    for k in ks:
        out.extend(solutions_for_value(k, term(rec, k)))
    return out


def search_difference_solutions(
    rec: BinaryRecurrence,
    k_min: int,
    k_max: int,
    workers: int = 1,
    k_limit: int = SEARCH_K_LIMIT,
) -> list[SolutionRecord]:
    """Every solution of U_k = a1*R_n - a2*R_m with k_min <= k <= k_max."""
    if k_min < 0 or k_min > k_max:
        raise ValueError(f"bad range {k_min}..{k_max}")
    if k_max > k_limit:
        raise ValueError(f"k_max={k_max} exceeds the search guard {k_limit}")
    if workers <= 1 or k_max - k_min < 64:
        return sorted(_search_range(rec, range(k_min, k_max + 1)))
    step = -(-(k_max - k_min + 1) // workers)
    chunks = [range(s, min(s + step, k_max + 1)) for s in range(k_min, k_max + 1, step)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(_search_range, [rec] * len(chunks), chunks)
    return sorted(r for part in parts for r in part)


def value_set(records) -> list[int]:
    return sorted({r.value for r in records})
