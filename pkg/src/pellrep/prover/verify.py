"""Independent re-check of a certificate.

The chain is regenerated at twice the recorded precision; exact outputs
must match and every recorded real must overlap its regenerated enclosure.
Solution records are re-checked against the recurrence directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Union

from ..errors import MalformedCertificate
from ..recurrences import SEQUENCES, term
from ..repdigits import repunit
from .certificate import Certificate, is_real
from .pipeline import K_SPLIT, ProofConfig, prove

_SEQ_OF = {"pell": "pell", "pell-lucas": "pell-lucas"}


@dataclass
class VerifyReport:
    ok: bool
    problems: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def _real_bounds(doc: dict) -> tuple[Fraction, Fraction]:
    try:
        lo, hi = Fraction(doc["lo"]), Fraction(doc["hi"])
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedCertificate(f"bad real {doc!r}") from exc
    if lo > hi:
        raise MalformedCertificate(f"empty interval {doc!r}")
    return lo, hi


def _compare(path: str, got: Any, want: Any, problems: list[str]) -> None:
    if is_real(got) or is_real(want):
        if not (is_real(got) and is_real(want)):
            problems.append(f"{path}: real expected")
            return
        glo, ghi = _real_bounds(got)
        wlo, whi = _real_bounds(want)
        if glo > whi or wlo > ghi:
            problems.append(f"{path}: [{got['lo']}, {got['hi']}] misses recomputed [{want['lo']}, {want['hi']}]")
        return
    if isinstance(want, dict):
        if not isinstance(got, dict) or list(got) != list(want):
            problems.append(f"{path}: fields differ")
            return
        for k in want:
            _compare(f"{path}.{k}", got[k], want[k], problems)
        return
    if isinstance(want, list):
        if not isinstance(got, list) or len(got) != len(want):
            problems.append(f"{path}: length differs")
            return
        for i, (g, w) in enumerate(zip(got, want)):
            _compare(f"{path}[{i}]", g, w, problems)
        return
    if type(got) is not type(want) or got != want:
        problems.append(f"{path}: {got!r} != recomputed {want!r}")


def _check_solutions(cert: Certificate, problems: list[str]) -> None:
    rec = SEQUENCES[_SEQ_OF[cert.theorem]]
    for r in cert.solution_set:
        if not (1 <= r.a1 <= 9 and 1 <= r.a2 <= 9 and r.n >= 2 and 1 <= r.m <= r.n):
            problems.append(f"solution {r}: digits or lengths out of range")
            continue
        if term(rec, r.k) != r.value or r.a1 * repunit(r.n) - r.a2 * repunit(r.m) != r.value:
            problems.append(f"solution {r}: equation does not hold")


def _check_closure(cert: Certificate, problems: list[str]) -> None:
    concl = cert.steps_of("conclusion")
    externals = cert.steps_of("external-lemma")
    if cert.status == "FAILED":
        return
    if not concl:
        problems.append("no conclusion step")
        return
    K = concl[-1].outputs.get("k_ceiling")
    if not isinstance(K, int) or K >= K_SPLIT:
        problems.append(f"conclusion k-ceiling {K!r} does not reach below {K_SPLIT}")
    brute = cert.steps_of("brute-force")
    if not brute or brute[0].inputs.get("k_max") != K_SPLIT - 1:
        problems.append("brute force does not cover every k below the split")
    want = "PROVED_CONDITIONAL" if externals else "PROVED"
    if cert.status != want:
        problems.append(f"status {cert.status} but {len(externals)} external lemma(s)")
    if any(s.outputs.get("verified") is not False for s in externals):
        problems.append("external lemmas must be marked unverified")


def verify_report(cert: Union[Certificate, dict, str], threads: int = 1) -> VerifyReport:
    """Full check; raises :class:`MalformedCertificate` on structural errors."""
    if isinstance(cert, str):
        cert = Certificate.loads(cert)
    elif isinstance(cert, dict):
        cert = Certificate.from_json(cert)
    problems: list[str] = []
    base = cert.metadata.get("base_precision_bits")
    if not isinstance(base, int) or isinstance(base, bool) or base < 64:
        raise MalformedCertificate("metadata.base_precision_bits missing or invalid")

    _check_solutions(cert, problems)
    _check_closure(cert, problems)

    cfg = ProofConfig(prec=2 * base, prec_cap=max(8192, 4 * base), threads=threads)
    fresh = prove(cert.theorem, cfg)
    got, want = cert.to_json(), fresh.to_json()
    _compare("status", got["status"], want["status"], problems)
    _compare("solution_set", got["solution_set"], want["solution_set"], problems)
    if len(got["steps"]) != len(want["steps"]):
        problems.append(f"steps: {len(got['steps'])} recorded, {len(want['steps'])} recomputed")
    else:
        for i, (g, w) in enumerate(zip(got["steps"], want["steps"])):
            for key in ("kind", "anchor", "inputs", "outputs"):
                _compare(f"steps[{i}].{key}", g[key], w[key], problems)
    meta_got = {k: v for k, v in got["metadata"].items() if k != "base_precision_bits"}
    meta_want = {k: v for k, v in want["metadata"].items() if k != "base_precision_bits"}
    _compare("metadata", meta_got, meta_want, problems)
    return VerifyReport(not problems, problems)


def verify_certificate(cert: Union[Certificate, dict, str], threads: int = 1) -> bool:
    return verify_report(cert, threads).ok
