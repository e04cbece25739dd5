#!/usr/bin/env python3
"""Feasible three-eigenvalue spectra and how many classes realise each."""
import argparse
import time

from seidelgen.three_ev import enumerate_feasible, has_regular_switching_graph, is_open, search_spectrum


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--min-order", type=int, default=3)
    ap.add_argument("--max-order", type=int, default=17)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--regular", action="store_true", help="also report classes with no regular switching graph")
    args = ap.parse_args()

    for n in range(args.min_order, args.max_order + 1):
        total = 0
        for fs in enumerate_feasible(n):
            if is_open(fs.spec):
                print(f"{n:3d} {fs.spec!s:32} open (skipped)")
                continue
            t0 = time.perf_counter()
            res = search_spectrum(fs.spec, jobs=args.jobs)
            weight = 1 if fs.self_negating else 2
            total += weight * res.count
            extra = ""
            if args.regular and res.matrices:
                odd = [S for S in res.matrices if not has_regular_switching_graph(S)]
                extra = f" irregular={len(odd)}"
            print(f"{n:3d} {fs.spec!s:32} {res.count:4d}{extra}  ({time.perf_counter() - t0:.1f}s)", flush=True)
        print(f"{n:3d} total {total}", flush=True)


if __name__ == "__main__":
    main()
