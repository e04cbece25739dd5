#!/usr/bin/env python3
"""Time unpruned generation per order and the invariant fast path against plain canonisation."""
import argparse
import time

from seidelgen.generator import generate_levels


def run(n, use_invariant, jobs):
    t0 = time.perf_counter()
    rows = []
    for order, level in generate_levels(n, use_invariant=use_invariant, jobs=jobs):
        rows.append((order, len(level), time.perf_counter() - t0))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-order", type=int, default=9)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    fast = run(args.max_order, True, args.jobs)
    slow = run(args.max_order, False, args.jobs)
    print("order classes invariant_s canon_only_s")
    for (o, c, t1), (_, c2, t2) in zip(fast, slow):
        assert c == c2
        print(f"{o:5d} {c:7d} {t1:11.2f} {t2:12.2f}")


if __name__ == "__main__":
    main()
