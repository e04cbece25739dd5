#!/usr/bin/env python3
"""Print class counts, cospectrality, distinct-eigenvalue and lambda_min tables
for the full census up to a given order."""
import argparse
import time
from collections import Counter

import numpy as np

from seidelgen.generator import generate_levels
from seidelgen.linalg import IntPolynomial, charpoly_batch
from seidelgen.spectral import cospectral_census, distinct_count_from_poly, lambda_min_class_poly


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-order", type=int, default=9)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    t0 = time.perf_counter()
    print("order classes polys with_mate max_family | distinct 1..n | lambda_min >=-3 =-3 >=-5 =-5 >=-7 =-7 | seconds")
    for order, level in generate_levels(args.max_order, jobs=args.jobs):
        polys = [IntPolynomial(c) for c in charpoly_batch(np.stack([g.matrix.array for g in level]))]
        cs = cospectral_census([p.coeffs for p in polys])
        hist = Counter(distinct_count_from_poly(p) for p in polys)
        lam = []
        for x in (-3, -5, -7):
            cls = [lambda_min_class_poly(p, x) for p in polys]
            lam += [sum(c >= 0 for c in cls), sum(c == 0 for c in cls)]
        print(order, len(level), cs.distinct_polys, cs.with_mate, cs.max_family, "|",
              *[hist.get(k, 0) for k in range(1, order + 1)], "|", *lam,
              f"| {time.perf_counter() - t0:.1f}", flush=True)


if __name__ == "__main__":
    main()
