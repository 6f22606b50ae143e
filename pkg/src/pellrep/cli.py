"""Command-line entry point: ``pellrep <subcommand> ...``."""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import constants as C
from .baker import MatveevInstance, matveev_exponent
from .errors import CertificationError, MalformedCertificate, PrecisionError
from .realfield.cf import expand_cf
from .realfield.precreal import decimal_string
from .realfield.quantities import Quantity
from .recurrences import SEQUENCES
from .reduction import ReductionInstance, dujella_petho_reduce
from .repdigits import search_difference_solutions

ENV_FLOOR = "PELLREP_PRECISION_FLOOR"
ENV_CAP = "PELLREP_PRECISION_CAP"


@dataclass(frozen=True)
class CliConfig:
    precision_floor: int = 256
    precision_cap: int = 8192
    output_path: Optional[Path] = None
    threads: int = 1

    def __post_init__(self):
        if self.precision_floor < 64 or self.precision_floor > self.precision_cap:
            raise ValueError("need 64 <= precision floor <= precision cap")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")

    @classmethod
    def from_args(cls, ns: argparse.Namespace, env=os.environ) -> "CliConfig":
        floor = ns.precision_floor if ns.precision_floor is not None else int(env.get(ENV_FLOOR, 256))
        cap = ns.precision_cap if ns.precision_cap is not None else int(env.get(ENV_CAP, 8192))
        threads = ns.threads if ns.threads is not None else max(1, os.cpu_count() or 1)
        return cls(floor, cap, Path(ns.output) if ns.output else None, threads)


def _decimal(text: str) -> Fraction:
    try:
        return C.parse_decimal(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _positive_int(text: str) -> int:
    # integral decimals such as 1.25e29 are accepted
    try:
        fr = C.parse_decimal(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if fr.denominator != 1:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    v = int(fr)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {v}")
    return v


def _decimal_list(text: str) -> list[Fraction]:
    return [_decimal(t) for t in text.split(",") if t.strip()]


def _quantity(text: str) -> Quantity:
    try:
        return C.parse_quantity(text)
    except (KeyError, ValueError) as exc:
        raise argparse.ArgumentTypeError(f"unknown constant or malformed number: {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pellrep", description="Certified proofs about Pell and Pell-Lucas numbers "
                                "that are differences of two repdigits.")
    p.add_argument("--precision-floor", type=_positive_int, default=None,
                   help=f"starting precision in bits (env {ENV_FLOOR}, default 256)")
    p.add_argument("--precision-cap", type=_positive_int, default=None,
                   help=f"largest precision in bits (env {ENV_CAP}, default 8192)")
    p.add_argument("--output", default=None, help="write the certificate (prove) to this file")
    p.add_argument("--threads", type=_positive_int, default=None, help="worker count (default: all cores)")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    sp = sub.add_parser("prove", help="run a full proof and emit its certificate")
    sp.add_argument("theorem", choices=["pell", "pell-lucas"])

    ss = sub.add_parser("search", help="list solutions U_k = a1*R_n - a2*R_m in a k range")
    ss.add_argument("--seq", required=True, choices=sorted(SEQUENCES))
    ss.add_argument("--kmin", required=True, type=_nonneg_int)
    ss.add_argument("--kmax", required=True, type=_nonneg_int)

    sr = sub.add_parser("reduce", help="one Dujella-Petho reduction")
    sr.add_argument("--tau", required=True, type=_quantity, help="named constant or decimal")
    sr.add_argument("--mu", required=True, type=_quantity, help="named constant or decimal")
    sr.add_argument("--M", required=True, type=_positive_int)
    sr.add_argument("--A", required=True, type=_decimal)
    sr.add_argument("--B", required=True, type=_quantity)

    sc = sub.add_parser("cf", help="certified continued fraction of a named constant")
    sc.add_argument("--const", required=True, type=_quantity,
                    help="one of: " + ", ".join(C.constant_names()))
    sc.add_argument("--terms", required=True, type=_positive_int)

    sm = sub.add_parser("matveev", help="Matveev exponent c with log|Lambda| > -c")
    sm.add_argument("--t", required=True, type=_positive_int)
    sm.add_argument("--D", required=True, type=_positive_int)
    sm.add_argument("--B", required=True, type=_decimal)
    sm.add_argument("--A", required=True, type=_decimal_list, help="comma-separated A_1,...,A_t")

    sv = sub.add_parser("verify", help="re-check a certificate file")
    sv.add_argument("--cert", required=True)
    return p


def _pm(x) -> str:
    return f"{decimal_string(x.value, 20)}±{decimal_string(x.err, 3, up=True)}"


def _cmd_prove(ns, cfg: CliConfig, out) -> int:
    from .prover import ProofConfig, prove

    cert = prove(ns.theorem, ProofConfig(prec=cfg.precision_floor, prec_cap=cfg.precision_cap, threads=cfg.threads))
    if cfg.output_path:
        cfg.output_path.write_text(cert.dumps(), encoding="utf-8")
    print(f"theorem={cert.theorem} status={cert.status}", file=out)
    print(f"value_set={{{', '.join(map(str, cert.value_set))}}}", file=out)
    for r in cert.solution_set:
        print(f"  k={r.k} {r.equation()}", file=out)
    print(f"k_ceiling={cert.final_ceiling}", file=out)
    return 0 if cert.status != "FAILED" else 1


def _cmd_search(ns, cfg: CliConfig, out) -> int:
    rec = SEQUENCES[ns.seq]
    try:
        recs = search_difference_solutions(rec, ns.kmin, ns.kmax, workers=cfg.threads)
    except ValueError as exc:
        raise _Usage(str(exc)) from exc
    for r in recs:
        print(f"k={r.k} {r.equation()} a1={r.a1} n={r.n} a2={r.a2} m={r.m}", file=out)
    print(f"value_set={{{', '.join(str(v) for v in sorted({r.value for r in recs}))}}}", file=out)
    return 0


def _cmd_reduce(ns, cfg: CliConfig, out) -> int:
    try:
        inst = ReductionInstance(ns.tau, ns.mu, ns.M, ns.A, ns.B)
    except ValueError as exc:
        raise _Usage(str(exc)) from exc
    if inst.mu.is_zero:
        raise _Usage("mu = 0 needs the Legendre bound, not this reduction")
    res = dujella_petho_reduce(inst, prec_floor=cfg.precision_floor, prec_cap=cfg.precision_cap)
    print(f"q_used={res.q_used} index={res.index} eps={_pm(res.eps)} w_bound={res.w_bound}", file=out)
    return 0


def _cmd_cf(ns, cfg: CliConfig, out) -> int:
    cf = expand_cf(ns.const, ns.terms, cfg.precision_floor, cfg.precision_cap)
    for i, (a, (p, q)) in enumerate(zip(cf.quotients, cf.convergents)):
        print(f"{i} {a} {p} {q}", file=out)
    return 0


def _cmd_matveev(ns, cfg: CliConfig, out) -> int:
    try:
        inst = MatveevInstance(ns.t, ns.D, tuple(ns.A), ns.B)
    except ValueError as exc:
        raise _Usage(str(exc)) from exc
    c = matveev_exponent(inst, cfg.precision_floor)
    print(c.ceil_upper(), file=out)
    print(f"c={_pm(c)}", file=out)
    for flag in inst.flags:
        print(f"note: {flag}", file=out)
    return 0


def _cmd_verify(ns, cfg: CliConfig, out) -> int:
    from .prover import verify_report

    try:
        text = Path(ns.cert).read_text(encoding="utf-8")
    except OSError as exc:
        raise _Usage(f"cannot read {ns.cert}: {exc}") from exc
    report = verify_report(text, threads=cfg.threads)
    if report.ok:
        print("verified", file=out)
        return 0
    print("REJECTED", file=out)
    for p in report.problems:
        print(f"  {p}", file=out)
    return 1


class _Usage(Exception):
    pass


COMMANDS = {
    "prove": _cmd_prove,
    "search": _cmd_search,
    "reduce": _cmd_reduce,
    "cf": _cmd_cf,
    "matveev": _cmd_matveev,
    "verify": _cmd_verify,
}


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = CliConfig.from_args(ns)
    except ValueError as exc:
        print(f"pellrep: error: {exc}", file=err)
        return 2
    try:
        return COMMANDS[ns.command](ns, cfg, out)
    except _Usage as exc:
        print(f"pellrep: error: {exc}", file=err)
        return 2
    except PrecisionError as exc:
        print(f"pellrep: precision exhausted: {exc}", file=err)
        return 1
    except (CertificationError, MalformedCertificate) as exc:
        print(f"pellrep: failed: {exc}", file=err)
        return 1


def main() -> None:
    sys.exit(run())
