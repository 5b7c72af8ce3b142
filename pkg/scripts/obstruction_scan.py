"""Search for modular obstructions at a given radius and save any found."""

from __future__ import annotations

import argparse
from pathlib import Path

from adlab import certio
from adlab.generators import GeneratorSet
from adlab.sieve import ObstructionBudget, find_obstruction
from adlab.verify import verify


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", default="2")
    ap.add_argument("--hmax", type=int, default=2)
    ap.add_argument("--max-seconds", type=float, default=60.0)
    ap.add_argument("--out", type=Path)
    args = ap.parse_args()
    g = GeneratorSet.smooth([int(p) for p in args.primes.split(",")])
    for h in range(0, args.hmax + 1):
        cert = find_obstruction(g, h, ObstructionBudget(max_seconds=args.max_seconds))
        if cert is None:
            print(f"h={h}: nothing found within budget")
            continue
        cf = certio.modular_file(cert)
        print(f"h={h}: Q={cert.Q} q={list(cert.q_list)} missing={cert.missing_count} verifies={verify(cf).valid}")
        if args.out:
            certio.write(cf, args.out / f"obstruction_h{h}.json")


if __name__ == "__main__":
    main()
