"""Run the full proof, write the certificate, and re-verify it from disk."""

import argparse
import time

from narayana_repdigits.numeric import PrecisionBudget
from narayana_repdigits.pipeline import ProofConfig, prove, verify_certificate, write_certificate


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="certificate.json")
    ap.add_argument("--bits", type=int, default=512)
    ap.add_argument("--cutoff", type=int, default=250)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--paper-constants", action="store_true")
    args = ap.parse_args()

    t = time.perf_counter()
    cert = prove(ProofConfig(args.cutoff, PrecisionBudget(args.bits), parallelism=args.jobs, paper_constants=args.paper_constants))
    write_certificate(cert, args.out)
    print(f"proof: {time.perf_counter() - t:.1f}s, verdict: {cert['verdict']['reason']}")
    t = time.perf_counter()
    print(f"verify: {verify_certificate(args.out)} ({time.perf_counter() - t:.1f}s)")


if __name__ == "__main__":
    main()
