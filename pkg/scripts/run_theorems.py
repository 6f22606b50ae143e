"""Prove both theorems, write the certificates and re-verify them.

usage: python3 scripts/run_theorems.py [OUTDIR] [--prec BITS] [--threads N]
"""

import argparse
import time
from pathlib import Path

from pellrep.prover import ProofConfig, prove, verify_report


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("outdir", nargs="?", default="certificates")
    ap.add_argument("--prec", type=int, default=256)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    ok = True
    for theorem in ("pell", "pell-lucas"):
        t0 = time.perf_counter()
        cert = prove(theorem, ProofConfig(prec=args.prec, threads=args.threads))
        t1 = time.perf_counter()
        path = out / f"{theorem}.json"
        path.write_text(cert.dumps(), encoding="utf-8")
        rep = verify_report(path.read_text(encoding="utf-8"), threads=args.threads)
        t2 = time.perf_counter()
        ok &= rep.ok and cert.status != "FAILED"
        print(f"{theorem}: {cert.status} values={cert.value_set} k_ceiling={cert.final_ceiling} "
              f"prove {t1 - t0:.1f}s verify {'ok' if rep.ok else 'REJECTED'} {t2 - t1:.1f}s -> {path}")
        for p in rep.problems:
            print(f"  {p}")
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
