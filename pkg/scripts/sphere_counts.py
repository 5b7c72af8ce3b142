"""Count lattice points of each length inside growing windows."""

from __future__ import annotations

import argparse

from adlab.engine import SearchCaps, ball
from adlab.generators import GeneratorSet


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", default="2,3")
    ap.add_argument("--h", type=int, default=4)
    ap.add_argument("--windows", default="10000,100000,1000000")
    args = ap.parse_args()
    g = GeneratorSet.smooth([int(p) for p in args.primes.split(",")])
    print("window," + ",".join(f"h{k}" for k in range(1, args.h + 1)))
    for w in (int(x) for x in args.windows.split(",")):
        b = ball(args.h, w, g, SearchCaps())
        print(f"{w}," + ",".join(str(len(b.sphere(k))) for k in range(1, args.h + 1)), flush=True)


if __name__ == "__main__":
    main()
