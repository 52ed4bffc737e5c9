"""Run the cut-law suite over several groups, seeds and sample sizes.

Prints one row per (group, seed) with the number of tuples checked, the
failing laws (if any) and the wall time.
"""

import argparse
import time

from hahnfield.cut_laws import check_laws
from hahnfield.literals import parse_group


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--groups", nargs="+", default=["Z", "Z^2lex", "Z^3lex", "Z[1/2]^8", "Z[1/3]^5", "Q<1/2,1/3>"])
    ap.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2])
    ap.add_argument("--count", type=int, default=10_000)
    ap.add_argument("--size", type=int, default=5, help="coordinate range of random elements")
    args = ap.parse_args()

    print(f"{'group':<12} {'seed':>4} {'tuples':>7} {'time_s':>7}  failures")
    for text in args.groups:
        g = parse_group(text)
        for seed in args.seeds:
            t0 = time.perf_counter()
            res = check_laws(g, args.count, seed=seed, size=args.size)
            dt = time.perf_counter() - t0
            bad = {law: first for law, (_, first) in res.items() if first is not None}
            print(f"{text:<12} {seed:>4} {args.count:>7} {dt:>7.2f}  {bad or 'none'}")


if __name__ == "__main__":
    main()
