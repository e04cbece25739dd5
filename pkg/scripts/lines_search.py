#!/usr/bin/env python3
"""Count Seidel classes that give equiangular line systems, order by order."""
import argparse
import time

from seidelgen.core import iter_census
from seidelgen.equiangular import LineSystemTarget, iter_lines


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dimension", type=int, default=7)
    ap.add_argument("--angle-inverse", type=int, default=3)
    ap.add_argument("--max-order", type=int, default=29)
    ap.add_argument("--seed", help="census file to start from")
    ap.add_argument("--no-lambda-bound", action="store_true")
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    target = LineSystemTarget(args.dimension, args.angle_inverse, bound_lambda_min=not args.no_lambda_bound)
    start = list(iter_census(args.seed)) if args.seed else None
    t0 = time.perf_counter()
    for order, level in iter_lines(target, args.max_order, start=start, jobs=args.jobs):
        print(f"{order:3d} {len(level):8d}  {time.perf_counter() - t0:.1f}s", flush=True)


if __name__ == "__main__":
    main()
