"""Print the first unreachable positive integer for small radii."""

from __future__ import annotations

import argparse
import time

from adlab.generators import GeneratorSet
from adlab.lambdas import compute_lambda


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", default="2,3")
    ap.add_argument("--hmax", type=int, default=3)
    ap.add_argument("--power-union", action="store_true", help="use powers of the bases instead of smooth numbers")
    args = ap.parse_args()
    nums = [int(p) for p in args.primes.split(",")]
    g = GeneratorSet.power_union(nums) if args.power_union else GeneratorSet.smooth(nums)
    for h in range(1, args.hmax + 1):
        t = time.perf_counter()
        print(compute_lambda(g, h).describe(), f"({time.perf_counter() - t:.1f}s)", flush=True)


if __name__ == "__main__":
    main()
